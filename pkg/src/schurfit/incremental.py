"""One-point streaming updates of the closed-form fit.

A ``RegressionState`` caches the aggregates behind the solution formula: the
minor-sum matrix S, the moment sums T, the signed numerators N, and the
denominator D.  Appending a point then only needs the subset sums that
involve the new point -- C(m, n-2) Schur products for the S increment R and
C(m, n-1) terms for the D increment -- dropping the per-point cost from
O(m^n) to O(m^(n-1)).  Points can only be appended; removal is unsupported.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import sqrt

from .numeric import Scalar, ScalarModeError, format_scalar, parse_scalar, scalar_pow
from .partitions import Exponents, lambda_drop, lambda_from_degrees
from .regress import (
    BMatrix,
    DataSet,
    NonUniqueSolutionError,
    _denominator_sum,
    _minor_matrix,
    _moment_sums,
    _signed_numerators,
    _zero_denominator,
)
from .symfunc import schur, vandermonde


class UnsupportedOperationError(RuntimeError):
    """Raised for operations the streaming scheme cannot support."""


@dataclass
class RegressionState:
    """Cached aggregates for a data stream under a fixed model signature.

    Invariants: S is Hermitian, N_i is the signed combination of row i of S
    with T, and a_i * D = N_i whenever D is nonzero.
    """

    d: Exponents
    exact: bool
    x: list
    y: list
    w: list | None
    s: list
    t: list
    n_vec: list
    denom: Scalar
    a: list | None
    evaluations: int = 0

    @property
    def m(self):
        return len(self.x)

    @property
    def coefficients(self):
        if self.a is None:
            raise NonUniqueSolutionError(
                "no unique solution yet: denominator is zero at m="
                f"{self.m} (need more / better-spread points)"
            )
        return self.a

    def remove_point(self, *_args):
        raise UnsupportedOperationError("points can only be appended, not removed")

    # -- snapshot / restore -------------------------------------------

    def to_dict(self):
        fmt = format_scalar
        return {
            "degrees": list(self.d),
            "mode": "exact" if self.exact else "float",
            "m": self.m,
            "x": [fmt(v) for v in self.x],
            "y": [fmt(v) for v in self.y],
            "w": [fmt(v) for v in self.w] if self.w is not None else None,
            "S": [[fmt(v) for v in row] for row in self.s],
            "T": [fmt(v) for v in self.t],
            "N": [fmt(v) for v in self.n_vec],
            "D": fmt(self.denom),
            "a": [fmt(v) for v in self.a] if self.a is not None else None,
            "evaluations": self.evaluations,
        }

    @staticmethod
    def from_dict(payload):
        exact = payload["mode"] == "exact"
        p = lambda text: parse_scalar(text, exact)
        return RegressionState(
            d=Exponents(payload["degrees"]),
            exact=exact,
            x=[p(v) for v in payload["x"]],
            y=[p(v) for v in payload["y"]],
            w=[p(v) for v in payload["w"]] if payload.get("w") is not None else None,
            s=[[p(v) for v in row] for row in payload["S"]],
            t=[p(v) for v in payload["T"]],
            n_vec=[p(v) for v in payload["N"]],
            denom=p(payload["D"]),
            a=[p(v) for v in payload["a"]] if payload.get("a") is not None else None,
            evaluations=int(payload.get("evaluations", 0)),
        )


def _coefficients_or_none(state_d, x, exact, n_vec, denom):
    lam = lambda_from_degrees(state_d)
    probe = _ThresholdProbe(x, exact)
    if _zero_denominator(denom, state_d, probe, lam):
        return None
    return [ni / denom for ni in n_vec]


class _ThresholdProbe:
    """Minimal DataSet-alike for the float degeneracy threshold."""

    def __init__(self, x, exact):
        self.x = x
        self.exact = exact


def init_state(d, data=None, *, exact=True):
    """Build a state from an initial batch (or an empty stream).

    With no data every aggregate is zero and coefficient queries error until
    enough points arrive.
    """
    if data is None:
        n = len(d)
        zero = Scalar.zero(exact)
        return RegressionState(
            d=d,
            exact=exact,
            x=[],
            y=[],
            w=None,
            s=[[zero for _ in range(n)] for _ in range(n)],
            t=[zero for _ in range(n)],
            n_vec=[zero for _ in range(n)],
            denom=zero,
            a=None,
        )
    s, evals_s = _minor_matrix(d, data)
    t = _moment_sums(d, data)
    n_vec = _signed_numerators(s, t)
    denom, evals_d = _denominator_sum(d, data)
    return RegressionState(
        d=d,
        exact=data.exact,
        x=list(data.x),
        y=list(data.y),
        w=list(data.w) if data.w is not None else None,
        s=s,
        t=t,
        n_vec=n_vec,
        denom=denom,
        a=_coefficients_or_none(d, data.x, data.exact, n_vec, denom),
        evaluations=evals_s + evals_d,
    )


def _increment_sums(state, x_new, w_new):
    """R (the S increment over (n-2)-subsets joined with the new point), the
    D increment over (n-1)-subsets, and the evaluation count."""
    d = state.d
    n = len(d)
    mode = state.exact
    m = state.m
    lam = lambda_from_degrees(d)
    drops = [lambda_drop(d, i) for i in range(1, n + 1)]
    wsq_new = w_new.mag_sq() if w_new is not None else Scalar.one(mode)

    r = [[Scalar.zero(mode) for _ in range(n)] for _ in range(n)]
    evals = 0
    if n >= 2:
        for subset in combinations(range(m), n - 2):
            pts = tuple(state.x[k] for k in subset) + (x_new,)
            vsq = vandermonde(pts, mode).mag_sq() * wsq_new
            if state.w is not None:
                for k in subset:
                    vsq = vsq * state.w[k].mag_sq()
            vals = [schur(drops[i], pts, mode) for i in range(n)]
            conj_vals = [v.conj() for v in vals]
            for i in range(n):
                vi = vals[i] * vsq
                for j in range(n):
                    r[i][j] = r[i][j] + vi * conj_vals[j]
            evals += n * n

    d_inc = Scalar.zero(mode)
    for subset in combinations(range(m), n - 1):
        pts = tuple(state.x[k] for k in subset) + (x_new,)
        term = (schur(lam, pts, mode) * vandermonde(pts, mode)).mag_sq() * wsq_new
        if state.w is not None:
            for k in subset:
                term = term * state.w[k].mag_sq()
        d_inc = d_inc + term
        evals += 1
    return r, d_inc, evals


def update(state, x_new, y_new, w_new=None):
    """Append one data point and return the refreshed state.

    The numerators are advanced division-free: N'_i adds the signed terms
    (S + R)_{i,j} * dT_j + R_{i,j} * T_j with dT_j the new point's moment
    contribution; coefficients are re-derived as N'_i / D' at the end.
    """
    if x_new.exact is not state.exact or y_new.exact is not state.exact:
        raise ScalarModeError("new point does not match the state's numeric mode")
    if (state.w is not None) != (w_new is not None) and state.m > 0:
        raise ValueError("weighted and unweighted points cannot be mixed")
    if w_new is not None and w_new.is_zero():
        raise ValueError("weights must be nonzero")

    d = state.d
    n = len(d)
    mode = state.exact
    r, d_inc, evals = _increment_sums(state, x_new, w_new)

    wsq_new = w_new.mag_sq() if w_new is not None else Scalar.one(mode)
    xbar = x_new.conj()
    dt = [scalar_pow(xbar, dj) * wsq_new * y_new for dj in d]

    new_s = [[state.s[i][j] + r[i][j] for j in range(n)] for i in range(n)]
    new_t = [state.t[j] + dt[j] for j in range(n)]
    new_n = []
    for i in range(n):
        acc = state.n_vec[i]
        for j in range(n):
            term = new_s[i][j] * dt[j] + r[i][j] * state.t[j]
            acc = acc + term if (i + j) % 2 == 0 else acc - term
        new_n.append(acc)
    new_d = state.denom + d_inc

    new_x = state.x + [x_new]
    new_w = None
    if state.w is not None or w_new is not None:
        new_w = (state.w or []) + [w_new]
    return RegressionState(
        d=d,
        exact=mode,
        x=new_x,
        y=state.y + [y_new],
        w=new_w,
        s=new_s,
        t=new_t,
        n_vec=new_n,
        denom=new_d,
        a=_coefficients_or_none(d, new_x, mode, new_n, new_d),
        evaluations=state.evaluations + evals,
    )


def extend_b_matrix(state, prior_b, x_new, w_new=None):
    """Grow B by the columns of the (n-1)-subsets containing the new point.

    `prior_b` must have been built from the state's current m points.  New
    columns are appended after the existing ones; the shared normalizer moves
    to the enlarged denominator.
    """
    d = state.d
    n = len(d)
    m = state.m
    mode = state.exact
    if len(prior_b.columns) and prior_b.columns[-1][-1] > m:
        raise ValueError("prior B matrix does not match the state's point count")

    _, d_inc, _ = _increment_sums(state, x_new, w_new)
    new_d = state.denom + d_inc

    drops = [lambda_drop(d, i) for i in range(1, n + 1)]
    root = None if mode else Scalar.from_float(sqrt(float(new_d.re)))
    rescale = None
    if not mode:
        old_root = sqrt(float(prior_b.denominator_root_sq.re))
        rescale = Scalar.from_float(old_root / float(root.re))

    columns = list(prior_b.columns)
    entries = [list(row) for row in prior_b.entries]
    if rescale is not None:
        entries = [[v * rescale for v in row] for row in entries]

    for subset in combinations(range(m), n - 2) if n >= 2 else []:
        pts = tuple(state.x[k] for k in subset) + (x_new,)
        v = vandermonde(pts, mode)
        wfac = Scalar.one(mode)
        if state.w is not None:
            for k in subset:
                wfac = wfac * state.w[k]
        if w_new is not None:
            wfac = wfac * w_new
        columns.append(tuple(k + 1 for k in subset) + (m + 1,))
        for i in range(n):
            e = schur(drops[i], pts, mode) * v * wfac
            if (i + 1) % 2 == 1:
                e = -e
            entries[i].append(e if mode else e / root)
    return BMatrix(
        entries=entries,
        columns=columns,
        denominator_root_sq=new_d,
        normalized=not mode,
    )
