"""Point evaluation of symmetric functions over Scalar tuples.

The production route for Schur values is the dual Jacobi-Trudi determinant in
elementary symmetric polynomials (a lam1 x lam1 determinant after expanding
one linear factor at a time).  The bialternant ratio and the semistandard
tableaux sum are retained as independent cross-checks; the tableaux route is
deliberately brute force and guarded to desk-scale inputs.
"""

from __future__ import annotations

from functools import lru_cache

from .numeric import Scalar, ScalarModeError, scalar_pow
from .partitions import Partition, conjugate

SSYT_MAX_WEIGHT = 12
SSYT_MAX_VARS = 6


def _mode_of(z, exact=None):
    """Common mode of a scalar tuple, falling back to `exact` when empty."""
    if len(z) == 0:
        return True if exact is None else exact
    mode = z[0].exact
    for s in z[1:]:
        if s.exact is not mode:
            raise ScalarModeError("point mixes exact and float scalars")
    return mode


def elem_sym_all(z, exact=None):
    """All elementary symmetric values (e_0, ..., e_r) of z, e_0 = 1.

    Expands prod(X - z_j) one factor at a time: the j-th factor costs j-1
    extra multiplications, n(n-1) flops in total.
    """
    mode = _mode_of(z, exact)
    e = [Scalar.one(mode)]
    for j, zj in enumerate(z):
        e.append(e[j] * zj)
        for k in range(j, 0, -1):
            e[k] = e[k] + e[k - 1] * zj
    return e


def vandermonde(z, exact=None):
    """prod_{i<j} (z_i - z_j); empty and singleton points give 1."""
    mode = _mode_of(z, exact)
    v = Scalar.one(mode)
    for i in range(len(z)):
        for j in range(i + 1, len(z)):
            v = v * (z[i] - z[j])
    return v


def det(rows, exact):
    """Determinant of a square Scalar matrix.

    Exact mode runs fraction-free Bareiss elimination (no intermediate
    blowup on integer input); float mode runs LU with partial pivoting.
    """
    n = len(rows)
    if n == 0:
        return Scalar.one(exact)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    a = [list(r) for r in rows]
    if exact:
        return _det_bareiss(a, exact)
    return _det_lu(a)


def _det_bareiss(a, exact):
    n = len(a)
    sign = 1
    prev = Scalar.one(exact)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Scalar.zero(exact)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def _det_lu(a):
    n = len(a)
    sign = 1
    for k in range(n):
        pivot = max(range(k, n), key=lambda r: float(a[r][k].mag_sq().re))
        if a[pivot][k].is_zero():
            return Scalar.zero(False)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k + 1, n):
                a[i][j] = a[i][j] - f * a[k][j]
    d = a[0][0]
    for k in range(1, n):
        d = d * a[k][k]
    return -d if sign < 0 else d


def alternating(mu, z):
    """Determinant of the matrix (z_i ** mu_j) for a strictly decreasing mu."""
    if len(mu) != len(z):
        raise ValueError("exponent tuple and point must have equal length")
    if any(a <= b for a, b in zip(mu, list(mu)[1:])):
        raise ValueError(f"exponents must be strictly decreasing: {tuple(mu)}")
    mode = _mode_of(z)
    rows = [[scalar_pow(zi, e) for e in mu] for zi in z]
    return det(rows, mode)


@lru_cache(maxsize=None)
def _jacobi_trudi_indices(parts, r):
    """Entry indices e_{lam'_i - i + j} of the dual Jacobi-Trudi matrix,
    with None marking out-of-range entries (k < 0 or k > r)."""
    lam_conj = conjugate(Partition(parts)).parts
    width = parts[0]
    rows = []
    for i in range(width):
        row = []
        for j in range(width):
            k = lam_conj[i] - (i + 1) + (j + 1)
            row.append(k if 0 <= k <= r else None)
        rows.append(tuple(row))
    return tuple(rows)


def schur(lam, z, exact=None):
    """Schur value s_lam(z) via the dual Jacobi-Trudi determinant.

    Empty lam gives 1; lam with more nonzero parts than variables gives 0.
    """
    mode = _mode_of(z, exact)
    parts = lam.normalized()
    if not parts:
        return Scalar.one(mode)
    r = len(z)
    if len(parts) > r:
        return Scalar.zero(mode)
    e = elem_sym_all(z, mode)
    zero = Scalar.zero(mode)
    idx = _jacobi_trudi_indices(parts, r)
    if len(idx) == 1:
        return e[idx[0][0]] if idx[0][0] is not None else zero
    rows = [[e[k] if k is not None else zero for k in row] for row in idx]
    return det(rows, mode)


def schur_bialternant(lam, z):
    """s_lam(z) as the alternating ratio a_{lam+delta}(z) / V(z).

    Requires pairwise distinct entries; exact mode divides exactly.
    """
    r = len(z)
    for i in range(r):
        for j in range(i + 1, r):
            if (z[i] - z[j]).is_zero():
                raise ZeroDivisionError(
                    f"bialternant needs distinct entries; z[{i}] == z[{j}]"
                )
    parts = lam.normalized()
    if len(parts) > r:
        return Scalar.zero(_mode_of(z))
    padded = parts + (0,) * (r - len(parts))
    mu = tuple(p + (r - 1 - i) for i, p in enumerate(padded))
    if r == 0:
        return Scalar.one(True)
    return alternating(mu, z) / vandermonde(z)


@lru_cache(maxsize=None)
def _ssyt_contents(parts, r):
    """Content vectors (c_1, ..., c_r) with multiplicity over all semistandard
    tableaux of the given shape filled from {1, ..., r}."""
    cells = [(i, j) for i, row_len in enumerate(parts) for j in range(row_len)]
    counts: dict[tuple, int] = {}
    fill = {}

    def place(pos):
        if pos == len(cells):
            content = [0] * r
            for v in fill.values():
                content[v - 1] += 1
            key = tuple(content)
            counts[key] = counts.get(key, 0) + 1
            return
        i, j = cells[pos]
        lo = 1
        if j > 0:
            lo = max(lo, fill[(i, j - 1)])  # rows weakly increase
        if i > 0:
            lo = max(lo, fill[(i - 1, j)] + 1)  # columns strictly increase
        for v in range(lo, r + 1):
            fill[(i, j)] = v
            place(pos + 1)
        fill.pop((i, j), None)

    place(0)
    return counts


def schur_tableaux(lam, z, exact=None):
    """s_lam(z) as a sum of monomials over semistandard Young tableaux.

    Test oracle only; refuses shapes beyond |lam| <= 12 or more than 6
    variables.
    """
    parts = lam.normalized()
    r = len(z)
    if sum(parts) > SSYT_MAX_WEIGHT or r > SSYT_MAX_VARS:
        raise ValueError(
            f"tableaux enumeration refused: |lam|={sum(parts)} (max "
            f"{SSYT_MAX_WEIGHT}), vars={r} (max {SSYT_MAX_VARS})"
        )
    mode = _mode_of(z, exact)
    total = Scalar.zero(mode)
    for content, count in sorted(_ssyt_contents(parts, r).items()):
        term = Scalar.from_int(count, mode)
        for zi, ci in zip(z, content):
            if ci:
                term = term * scalar_pow(zi, ci)
        total = total + term
    return total
