"""Evolution-operator toolkit for a dioecious population model.

Thin wrapper around the C++ core: parameters travel as 6-tuples
(a, b, c, alpha, beta, gamma), states as (x, y) pairs. The exact-rational
entry points accept scalars as strings ("3/10", "0.3").
"""

from ._core import (
    __version__,
    apply_T,
    apply_W,
    apply_W_exact,
    apply_f,
    check_lemma_q2,
    classify_square,
    fixed_points,
    iterate,
    predict_symmetric_limit,
    quadrant_to_square,
    quadratic_roots,
    scan_basins,
    square_to_quadrant,
    stable_boundary,
    to_reduced,
    unstable_curve,
)

__all__ = [
    "__version__",
    "apply_T",
    "apply_W",
    "apply_W_exact",
    "apply_f",
    "check_lemma_q2",
    "classify_square",
    "fixed_points",
    "iterate",
    "predict_symmetric_limit",
    "quadrant_to_square",
    "quadratic_roots",
    "scan_basins",
    "square_to_quadrant",
    "stable_boundary",
    "to_reduced",
    "unstable_curve",
]
