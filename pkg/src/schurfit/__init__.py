"""Polynomial regression via Schur polynomials and Vandermonde determinants."""

from .numeric import (
    Scalar,
    ScalarModeError,
    format_scalar,
    magnitude_sq,
    parse_scalar,
    scalar_pow,
)
from .partitions import (
    Exponents,
    Partition,
    conjugate,
    enumerate_subsets,
    lambda_drop,
    lambda_from_degrees,
    staircase,
)
from .symfunc import (
    alternating,
    elem_sym_all,
    schur,
    schur_bialternant,
    schur_tableaux,
    vandermonde,
)
from .regress import (
    BMatrix,
    DataSet,
    FitResult,
    InsufficientDataError,
    NonUniqueSolutionError,
    b_matrix,
    denominator,
    design_matrix,
    fit,
    fit_weighted,
    gram,
    minor_sum,
    projection_residual,
    pseudoinverse,
)
from .incremental import (
    RegressionState,
    UnsupportedOperationError,
    extend_b_matrix,
    init_state,
    update,
)
from .oracle import RankDeficiencyError, brute_force_min, solve_normal

__all__ = [
    "BMatrix",
    "DataSet",
    "Exponents",
    "FitResult",
    "InsufficientDataError",
    "NonUniqueSolutionError",
    "Partition",
    "RankDeficiencyError",
    "RegressionState",
    "Scalar",
    "ScalarModeError",
    "UnsupportedOperationError",
    "alternating",
    "b_matrix",
    "brute_force_min",
    "conjugate",
    "denominator",
    "design_matrix",
    "elem_sym_all",
    "enumerate_subsets",
    "extend_b_matrix",
    "fit",
    "fit_weighted",
    "format_scalar",
    "gram",
    "init_state",
    "lambda_drop",
    "lambda_from_degrees",
    "magnitude_sq",
    "minor_sum",
    "parse_scalar",
    "projection_residual",
    "pseudoinverse",
    "scalar_pow",
    "schur",
    "schur_bialternant",
    "schur_tableaux",
    "solve_normal",
    "staircase",
    "update",
    "vandermonde",
]
