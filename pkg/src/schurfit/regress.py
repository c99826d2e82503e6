"""Closed-form least squares for models sum_i a_i x^{d_i}.

The coefficients come out of subset sums of Schur and Vandermonde values:
numerators N_i as signed combinations of the minor sums S_{i,j} with the
moment sums T_j, and a shared real denominator D.  All aggregates are
division-free; the only division is the final a_i = N_i / D, so exact mode
never rounds.  The same sums yield the wide B matrix, the pseudoinverse
B B* A*, and the projection onto the model column space.  Weights enter as
|w|^2 factors on every subset term, per the weighted normal equation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import sqrt

from .numeric import Scalar, ScalarModeError, scalar_pow
from .partitions import Exponents, enumerate_subsets, lambda_drop, lambda_from_degrees
from .symfunc import schur, vandermonde


class InsufficientDataError(ValueError):
    """Fewer data points than model terms: the subset sums are empty."""


class NonUniqueSolutionError(ArithmeticError):
    """The denominator vanishes, so the normal equation has no unique solution."""


class DataSet:
    """Paired sample vectors x, y with optional nonzero weights w."""

    __slots__ = ("x", "y", "w")

    def __init__(self, x, y, w=None):
        self.x = list(x)
        self.y = list(y)
        self.w = list(w) if w is not None else None
        if len(self.x) < 1:
            raise ValueError("need at least one data point")
        if len(self.y) != len(self.x):
            raise ValueError("x and y must have equal length")
        if self.w is not None and len(self.w) != len(self.x):
            raise ValueError("w must match x in length")
        mode = self.x[0].exact
        for s in self.x + self.y + (self.w or []):
            if s.exact is not mode:
                raise ScalarModeError("data set mixes exact and float scalars")
        if self.w is not None:
            for k, wk in enumerate(self.w):
                if wk.is_zero():
                    raise ValueError(f"weight {k + 1} is zero; weights must be nonzero")

    @property
    def m(self):
        return len(self.x)

    @property
    def exact(self):
        return self.x[0].exact

    def weight_sq(self, k):
        """|w_k|^2 (k is 0-based), or 1 when unweighted."""
        if self.w is None:
            return Scalar.one(self.exact)
        return self.w[k].mag_sq()


@dataclass
class FitResult:
    """Solution of one least-squares fit.

    `numerators` and `denominator` are the raw aggregates N_i and D with
    a_i = N_i / D, retained so a fit can seed the incremental updater.
    `residual_sq` is the exact squared minimal distance.
    """

    coefficients: list
    denominator: Scalar
    numerators: list
    residual_sq: Scalar
    evaluations: int = 0

    @property
    def residual(self):
        return sqrt(max(float(self.residual_sq.re), 0.0))


@dataclass
class BMatrix:
    """The n x C(m, n-1) matrix whose columns are indexed by (n-1)-subsets.

    Invariant: entries[i][c] * denominator_root = (-1)^(i+1) * w_l *
    s_{lam[i+1]}(x_l) * V(x_l) for column subset l = columns[c].  Float mode
    stores normalized entries (denominator_root = sqrt(D)); exact mode keeps
    the raw numerators and defers the irrational root, exposing
    denominator_root_sq = D instead.
    """

    entries: list
    columns: list
    denominator_root_sq: Scalar
    normalized: bool

    @property
    def denominator_root(self):
        return sqrt(float(self.denominator_root_sq.re))


def design_matrix(d, x):
    """The m x n matrix A with A[k][j] = x_k ** d_j."""
    return [[scalar_pow(xk, dj) for dj in d] for xk in x]


def gram(d, data):
    """The Hermitian n x n matrix (WA)*WA of weighted conjugate power sums."""
    n = len(d)
    mode = data.exact
    pows = design_matrix(d, data.x)
    g = [[Scalar.zero(mode) for _ in range(n)] for _ in range(n)]
    for k in range(data.m):
        wsq = data.weight_sq(k)
        row = pows[k]
        for i in range(n):
            ci = row[i].conj() * wsq
            for j in range(n):
                g[i][j] = g[i][j] + ci * row[j]
    return g


def _weight_sq_subset(data, subset):
    wsq = Scalar.one(data.exact)
    if data.w is not None:
        for k in subset:
            wsq = wsq * data.w[k].mag_sq()
    return wsq


def _denominator_sum(d, data, lam=None):
    """D = sum over n-subsets of |w_k s_lam(x_k) V(x_k)|^2 and its term count."""
    n = len(d)
    mode = data.exact
    if lam is None:
        lam = lambda_from_degrees(d)
    total = Scalar.zero(mode)
    count = 0
    for subset in combinations(range(data.m), n):
        pts = tuple(data.x[k] for k in subset)
        term = (schur(lam, pts) * vandermonde(pts)).mag_sq()
        if data.w is not None:
            term = term * _weight_sq_subset(data, subset)
        total = total + term
        count += 1
    return total, count


def _minor_matrix(d, data, drops=None):
    """All minor sums S_{i,j} at once, plus the number of summand evaluations.

    Each (n-1)-subset contributes the n^2 products
    s_{lam[i]}(x_l) * conj(s_{lam[j]}(x_l)) * |V(x_l)|^2 (weighted by |w_l|^2).
    """
    n = len(d)
    mode = data.exact
    if drops is None:
        drops = [lambda_drop(d, i) for i in range(1, n + 1)]
    s = [[Scalar.zero(mode) for _ in range(n)] for _ in range(n)]
    count = 0
    for subset in combinations(range(data.m), n - 1):
        pts = tuple(data.x[k] for k in subset)
        vsq = vandermonde(pts, mode).mag_sq()
        if data.w is not None:
            vsq = vsq * _weight_sq_subset(data, subset)
        vals = [schur(drops[i], pts, mode) for i in range(n)]
        conj_vals = [v.conj() for v in vals]
        for i in range(n):
            vi = vals[i] * vsq
            for j in range(n):
                s[i][j] = s[i][j] + vi * conj_vals[j]
        count += n * n
    return s, count


def _moment_sums(d, data):
    """T_j = sum_k |w_k|^2 conj(x_k)^{d_j} y_k."""
    n = len(d)
    mode = data.exact
    t = [Scalar.zero(mode) for _ in range(n)]
    for k in range(data.m):
        xbar = data.x[k].conj()
        wy = data.weight_sq(k) * data.y[k]
        for j, dj in enumerate(d):
            t[j] = t[j] + scalar_pow(xbar, dj) * wy
    return t


def _signed_numerators(s, t):
    """N_i = sum_j (-1)^(i+j) S_{i,j} T_j (1-based signs)."""
    n = len(t)
    mode = t[0].exact if n else True
    out = []
    for i in range(n):
        acc = Scalar.zero(mode)
        for j in range(n):
            term = s[i][j] * t[j]
            acc = acc + term if (i + j) % 2 == 0 else acc - term
        out.append(acc)
    return out


def _zero_denominator(dvalue, d, data, lam):
    """Degeneracy test: exact zero, or float |D| below a scale-aware floor."""
    if data.exact:
        return dvalue.is_zero()
    scale = max((abs(xk) for xk in data.x), default=1.0)
    if scale == 0.0:
        scale = 1.0
    n = len(d)
    floor = 1e-12 * scale ** (2 * lam.weight + n * (n - 1))
    return abs(float(dvalue.re)) <= floor


def denominator(d, data):
    """The real non-negative denominator D = det((WA)*WA) as a subset sum."""
    if data.m < len(d):
        raise InsufficientDataError(
            f"need at least {len(d)} points for {len(d)} model terms, got {data.m}"
        )
    total, _ = _denominator_sum(d, data)
    return total


def minor_sum(d, data, i, j):
    """S_{i,j}: the (j,i) minor of the Gram matrix as an (n-1)-subset sum
    (i, j are 1-based)."""
    n = len(d)
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError("minor indices out of range")
    if data.m < n - 1:
        raise InsufficientDataError(
            f"need at least {n - 1} points for the minor sums, got {data.m}"
        )
    mode = data.exact
    lam_i = lambda_drop(d, i)
    lam_j = lambda_drop(d, j)
    total = Scalar.zero(mode)
    for subset in combinations(range(data.m), n - 1):
        pts = tuple(data.x[k] for k in subset)
        term = schur(lam_i, pts, mode) * schur(lam_j, pts, mode).conj()
        term = term * vandermonde(pts, mode).mag_sq()
        if data.w is not None:
            term = term * _weight_sq_subset(data, subset)
        total = total + term
    return total


def fit(d, data):
    """Least-squares coefficients of the model sum_i a_i x^{d_i}.

    Exact mode returns the exact rational solution.  Uses weights from the
    data set when present.
    """
    n = len(d)
    if data.m < n:
        raise InsufficientDataError(
            f"need at least {n} points for {n} model terms, got {data.m}"
        )
    lam = lambda_from_degrees(d)
    dvalue, evals_d = _denominator_sum(d, data, lam)
    if _zero_denominator(dvalue, d, data, lam):
        raise NonUniqueSolutionError(
            "denominator vanishes: the model matrix is rank deficient "
            f"(need at least {n} distinct positive real x values, or more "
            "generally an injective design matrix)"
        )
    s, evals_s = _minor_matrix(d, data)
    t = _moment_sums(d, data)
    numerators = _signed_numerators(s, t)
    a = [ni / dvalue for ni in numerators]
    residual_sq = _residual_sq(data, t, a)
    return FitResult(
        coefficients=a,
        denominator=dvalue,
        numerators=numerators,
        residual_sq=residual_sq,
        evaluations=evals_d + evals_s,
    )


def fit_weighted(d, data):
    """Weighted fit; requires explicit weights on the data set."""
    if data.w is None:
        raise ValueError("fit_weighted requires a data set with weights")
    return fit(d, data)


def _residual_sq(data, t, a):
    """||y||_W^2 - Re<(WA)* W y | a>, the squared minimal distance."""
    mode = data.exact
    ysq = Scalar.zero(mode)
    for k in range(data.m):
        ysq = ysq + data.y[k].mag_sq() * data.weight_sq(k)
    inner = Scalar.zero(mode)
    for tj, aj in zip(t, a):
        inner = inner + tj.conj() * aj
    return (ysq - inner).real_part()


def b_matrix(d, data):
    """The wide matrix B of Eq-(5)-style columns over (n-1)-subsets.

    Column order is the lexicographic subset order.  Exact mode keeps raw
    numerator entries (the square root of D is irrational in general);
    float mode divides through by sqrt(D).
    """
    n = len(d)
    if data.m < n:
        raise InsufficientDataError(
            f"need at least {n} points for {n} model terms, got {data.m}"
        )
    mode = data.exact
    lam = lambda_from_degrees(d)
    dvalue, _ = _denominator_sum(d, data, lam)
    if _zero_denominator(dvalue, d, data, lam):
        raise NonUniqueSolutionError("denominator vanishes: B is undefined")
    drops = [lambda_drop(d, i) for i in range(1, n + 1)]
    columns = list(enumerate_subsets(data.m, n - 1))
    entries = [[None] * len(columns) for _ in range(n)]
    root = None if mode else Scalar.from_float(sqrt(float(dvalue.re)))
    for c, col in enumerate(columns):
        subset = tuple(k - 1 for k in col)
        pts = tuple(data.x[k] for k in subset)
        v = vandermonde(pts, mode)
        wfac = Scalar.one(mode)
        if data.w is not None:
            for k in subset:
                wfac = wfac * data.w[k]
        for i in range(n):
            e = schur(drops[i], pts, mode) * v * wfac
            if (i + 1) % 2 == 1:
                e = -e
            entries[i][c] = e if mode else e / root
    return BMatrix(
        entries=entries,
        columns=columns,
        denominator_root_sq=dvalue,
        normalized=not mode,
    )


def _bbstar(b):
    """B B*: the n x n Hermitian product of B with its conjugate transpose.

    For raw exact entries this is D * (A*A)^(-1); normalized float entries
    give (A*A)^(-1) directly.
    """
    n = len(b.entries)
    mode = b.entries[0][0].exact if b.entries and b.entries[0] else True
    g = [[Scalar.zero(mode) for _ in range(n)] for _ in range(n)]
    for c in range(len(b.columns)):
        col = [b.entries[i][c] for i in range(n)]
        conj_col = [v.conj() for v in col]
        for i in range(n):
            for j in range(n):
                g[i][j] = g[i][j] + col[i] * conj_col[j]
    return g


def pseudoinverse(d, data):
    """The solution operator B B* A* (times W*W when weighted) as n x m.

    Exact mode combines the two 1/sqrt(D) factors into a single final
    division by D, so no square root ever appears.
    """
    b = b_matrix(d, data)
    n = len(d)
    mode = data.exact
    a_mat = design_matrix(d, data.x)
    g = _bbstar(b)
    out = [[Scalar.zero(mode) for _ in range(data.m)] for _ in range(n)]
    for i in range(n):
        for k in range(data.m):
            acc = Scalar.zero(mode)
            for j in range(n):
                acc = acc + g[i][j] * a_mat[k][j].conj()
            acc = acc * data.weight_sq(k)
            if mode:
                acc = acc / b.denominator_root_sq
            out[i][k] = acc
    return out


def projection_residual(d, data):
    """Projection P = A B (AB)* onto the model column space, and the squared
    minimal distance <y | (1 - P) y> (weighted inner product when weighted)."""
    aplus = pseudoinverse(d, data)
    n = len(d)
    m = data.m
    mode = data.exact
    a_mat = design_matrix(d, data.x)
    p = [[Scalar.zero(mode) for _ in range(m)] for _ in range(m)]
    for r in range(m):
        for c in range(m):
            acc = Scalar.zero(mode)
            for j in range(n):
                acc = acc + a_mat[r][j] * aplus[j][c]
            p[r][c] = acc
    resid = Scalar.zero(mode)
    for k in range(m):
        pk = Scalar.zero(mode)
        for c in range(m):
            pk = pk + p[k][c] * data.y[c]
        resid = resid + data.y[k].conj() * (data.y[k] - pk) * data.weight_sq(k)
    return p, resid.real_part()
