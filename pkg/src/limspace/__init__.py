"""Banach spaces of functions converging at infinity and their dual pairings."""

from .limcore import (
    GridFunction,
    LimFunctionHalf,
    LimFunctionLine,
    LimSequence,
    check_lambda_limit,
    check_norm_equivalence,
    degenerate_perturbation,
    join_line,
    split_line,
    sup_norm,
    x_norm,
)
from .measures import (
    NEG_INF,
    POS_INF,
    SignedMeasure,
    StepFunction,
    integrate,
    jordan_decompose,
    pushforward_compactify,
    total_variation,
)

__version__ = "0.1.0"

__all__ = [
    "GridFunction",
    "LimFunctionHalf",
    "LimFunctionLine",
    "LimSequence",
    "check_lambda_limit",
    "check_norm_equivalence",
    "degenerate_perturbation",
    "join_line",
    "split_line",
    "sup_norm",
    "x_norm",
    "NEG_INF",
    "POS_INF",
    "SignedMeasure",
    "StepFunction",
    "integrate",
    "jordan_decompose",
    "pushforward_compactify",
    "total_variation",
]
