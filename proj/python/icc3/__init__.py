"""Interval constrained 3-coloring toolkit.

Instances, formulas and reduction maps are exchanged as text in the
project's line-based formats; colorings are lists of color codes
(1 = RED, 2 = BLACK, 3 = WHITE) and assignments are lists of bools.
"""

from ._core import (
    IccCapacityError,
    IccInputError,
    IccParseError,
    brute_force_sat,
    build_expander,
    check_consistency,
    compute_epsilon,
    count_colors,
    edge_expansion_exact,
    encode_coloring,
    enumerate_colorings,
    eval_unsat,
    expansion_lower_bound_spectral,
    extract_assignment,
    gap_reduce,
    majority_extract,
    max_sat_brute,
    max_satisfy_brute,
    normalize_dimacs,
    normalize_instance,
    planted_random_3sat,
    random_hdx_instance,
    reduce,
    solve_backtracking,
    solve_dpll_instance,
    soundness_audit,
    verify,
)

__all__ = [
    "IccCapacityError",
    "IccInputError",
    "IccParseError",
    "brute_force_sat",
    "build_expander",
    "check_consistency",
    "compute_epsilon",
    "count_colors",
    "edge_expansion_exact",
    "encode_coloring",
    "enumerate_colorings",
    "eval_unsat",
    "expansion_lower_bound_spectral",
    "extract_assignment",
    "gap_reduce",
    "majority_extract",
    "max_sat_brute",
    "max_satisfy_brute",
    "normalize_dimacs",
    "normalize_instance",
    "planted_random_3sat",
    "random_hdx_instance",
    "reduce",
    "solve_backtracking",
    "solve_dpll_instance",
    "soundness_audit",
    "verify",
]
