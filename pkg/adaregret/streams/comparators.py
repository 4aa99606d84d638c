"""Comparator constructors inside the budgeted class Omega_T^P."""

import math
from dataclasses import dataclass

import numpy as np

from adaregret.errors import InfeasibleBudgetError, InvalidInputError
from adaregret.geometry.base import FeasibleSet
from adaregret.geometry.path import ComparatorPath, max_segments
from adaregret.geometry.vector import as_matrix, check_dimension
from adaregret.scheduler.budgets import PathBudgetFunction


def equal_boundaries(horizon: int, segments: int) -> tuple[int, ...]:
    """t_0 = 0 < t_1 < ... < t_M = T with near-equal segment lengths."""
    if not 1 <= segments <= horizon:
        raise InfeasibleBudgetError(f"cannot split {horizon} rounds into {segments} segments")
    return tuple((k * horizon) // segments for k in range(segments + 1))


@dataclass(frozen=True, eq=False)
class SegmentedComparator:
    """Piecewise-constant comparator: w_t* = points[k] for boundaries[k] < t <= boundaries[k+1]."""

    boundaries: tuple[int, ...]
    points: np.ndarray
    budget: float

    @property
    def segments(self) -> int:
        return self.points.shape[0]

    def expand(self, feasible_set: FeasibleSet) -> ComparatorPath:
        lengths = np.diff(self.boundaries)
        return ComparatorPath.build(
            np.repeat(self.points, lengths, axis=0), self.budget, feasible_set
        )


def best_segmented_comparator(
    gradients: np.ndarray,
    feasible_set: FeasibleSet,
    budget: float,
    segments: int | None = None,
    boundaries: tuple[int, ...] | None = None,
) -> SegmentedComparator:
    """
    Per-segment linear minimizer of (sum of segment gradients)^T w.

    With at most floor(P/D) + 1 segments every hop is bounded by D, so the
    comparator stays within the budget. Segments default to that maximum,
    capped at T, with equal lengths.
    """
    gradients = as_matrix(gradients, name="gradients")
    check_dimension(gradients, feasible_set.dimension, name="gradients")
    horizon = gradients.shape[0]
    diameter = feasible_set.diameter()
    if not (math.isfinite(budget) and budget >= 0.0):
        raise InvalidInputError(f"budget must be nonnegative, got {budget}")
    limit = max_segments(budget, diameter)
    if boundaries is None:
        segments = min(limit, horizon) if segments is None else segments
        boundaries = equal_boundaries(horizon, segments)
    else:
        boundaries = tuple(int(b) for b in boundaries)
        if boundaries[0] != 0 or boundaries[-1] != horizon or np.any(np.diff(boundaries) <= 0):
            raise InvalidInputError(f"boundaries must increase strictly from 0 to {horizon}")
        segments = len(boundaries) - 1
    if segments > limit:
        raise InfeasibleBudgetError(
            f"{segments} segments need budget {(segments - 1) * diameter}, only {budget} available"
        )
    sums = np.add.reduceat(gradients, boundaries[:-1], axis=0)
    points = feasible_set.linear_minimizer(sums)
    return SegmentedComparator(boundaries=boundaries, points=points, budget=float(budget))


def budgeted_comparator(
    gradients: np.ndarray,
    feasible_set: FeasibleSet,
    budget_fn: PathBudgetFunction,
) -> ComparatorPath:
    """
    Segmented comparator whose every prefix respects a growing budget.

    The j-th switch happens at the first round t with P(t) >= j*D, so the
    variation of the first t points never exceeds P(t).
    """
    gradients = as_matrix(gradients, name="gradients")
    horizon = gradients.shape[0]
    diameter = feasible_set.diameter()
    allowance = budget_fn.evaluate(np.arange(1, horizon + 1))
    switches = []
    for j in range(1, horizon):
        reached = np.nonzero(allowance >= j * diameter)[0]
        if reached.size == 0:
            break
        # a switch at round t (1-based) moves between t-1 and t
        switches.append(int(reached[0]))
    boundaries = tuple(sorted(set([0, *[s for s in switches if 0 < s < horizon], horizon])))
    comparator = best_segmented_comparator(
        gradients, feasible_set, float(allowance[-1]), boundaries=boundaries
    )
    return comparator.expand(feasible_set)
