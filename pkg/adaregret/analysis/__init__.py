"""Regret accounting, bound calculators and the trace inequality."""

from adaregret.analysis.bounds import (
    CoordinateComparison,
    DoublingBounds,
    bound_adaptive,
    bound_constant,
    bound_diagonal_adagrad,
    bound_doubling_segmented,
    bound_per_coordinate,
    bound_realized_rates,
    bounds_doubling,
    lower_bound_max,
    lower_bound_per_coordinate,
    lower_bound_sum,
    minimax_gap,
    per_coordinate_improvement,
)
from adaregret.analysis.eigen import symmetric_eigenvalues
from adaregret.analysis.gram import GramAccumulator, TraceInequality, trace_inequality
from adaregret.analysis.regret import diagnostics, dynamic_regret, evaluate_bounds, exceeds

__all__ = [
    "CoordinateComparison",
    "DoublingBounds",
    "GramAccumulator",
    "TraceInequality",
    "bound_adaptive",
    "bound_constant",
    "bound_diagonal_adagrad",
    "bound_doubling_segmented",
    "bound_per_coordinate",
    "bound_realized_rates",
    "bounds_doubling",
    "diagnostics",
    "dynamic_regret",
    "evaluate_bounds",
    "exceeds",
    "lower_bound_max",
    "lower_bound_per_coordinate",
    "lower_bound_sum",
    "minimax_gap",
    "per_coordinate_improvement",
    "symmetric_eigenvalues",
    "trace_inequality",
]
