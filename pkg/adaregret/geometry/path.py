"""Comparator paths and their path variation."""

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from adaregret.config import get_settings
from adaregret.errors import InvalidInputError
from adaregret.geometry.base import FeasibleSet
from adaregret.geometry.vector import ArrayLike, as_matrix, check_dimension

# Absorbs P/D rounding such as 5D/D = 4.999...
_FLOOR_SLACK = 1e-12


def _hops(points: np.ndarray | Sequence[ArrayLike]) -> np.ndarray:
    matrix = as_matrix(points, name="points")
    return np.linalg.norm(np.diff(matrix, axis=0), axis=1)


def max_segments(budget: float, diameter: float) -> int:
    """floor(P/D) + 1 stationary pieces fit in the budget with diameter-bounded hops."""
    return math.floor(budget / diameter * (1.0 + _FLOOR_SLACK)) + 1


def path_variation(points: np.ndarray | Sequence[ArrayLike]) -> float:
    """Sum of successive Euclidean distances; 0 for one point or a constant path."""
    # fsum is exactly rounded, so the value does not depend on traversal order.
    return math.fsum(_hops(points))


def prefix_variation(points: np.ndarray | Sequence[ArrayLike]) -> np.ndarray:
    """Entry t-1 is the variation of the first t points (entry 0 is 0)."""
    return np.concatenate(([0.0], np.cumsum(_hops(points))))


def coordinate_path_variation(points: np.ndarray | Sequence[ArrayLike]) -> np.ndarray:
    """Per-coordinate variation P_i = sum_t |w_{t+1,i} - w_{t,i}|."""
    matrix = as_matrix(points, name="points")
    return np.abs(np.diff(matrix, axis=0)).sum(axis=0)


@dataclass(frozen=True, eq=False)
class ComparatorPath:
    """A comparator sequence w_1*, ..., w_T* inside K with budget P >= its variation."""

    points: np.ndarray
    budget: float

    @classmethod
    def build(
        cls,
        points: np.ndarray | Sequence[ArrayLike],
        budget: float,
        feasible_set: FeasibleSet,
        tolerance: float | None = None,
    ) -> "ComparatorPath":
        """
        Validate and wrap a comparator sequence.

        Membership and the budget are checked with a slack of
        ``tolerance * D`` (default ``membership_tolerance``) so that generator
        rounding does not reject comparators that are feasible in exact
        arithmetic.
        """
        matrix = as_matrix(points, name="comparator")
        check_dimension(matrix, feasible_set.dimension, name="comparator")
        tolerance = get_settings().membership_tolerance if tolerance is None else tolerance
        diameter = feasible_set.diameter()
        slack = tolerance * diameter
        budget = float(budget)
        if not math.isfinite(budget) or budget < 0.0:
            raise InvalidInputError(f"comparator budget must be finite and >= 0, got {budget}")
        horizon = matrix.shape[0]
        if budget > diameter * (horizon - 1) + slack:
            raise InvalidInputError(
                f"comparator budget {budget} exceeds D*(T-1) = {diameter * (horizon - 1)}"
            )
        moved = np.linalg.norm(feasible_set.project(matrix) - matrix, axis=1)
        worst = int(np.argmax(moved))
        if moved[worst] >= slack:
            raise InvalidInputError(
                f"comparator point {worst + 1} lies outside the feasible set "
                f"(projection moves it by {moved[worst]:.3e})"
            )
        variation = path_variation(matrix)
        if variation > budget + slack:
            raise InvalidInputError(
                f"comparator path variation {variation} exceeds its budget {budget}"
            )
        matrix.setflags(write=False)
        return cls(points=matrix, budget=budget)

    @classmethod
    def fixed(cls, point: ArrayLike, horizon: int, feasible_set: FeasibleSet) -> "ComparatorPath":
        """Static comparator repeating ``point`` for ``horizon`` rounds (budget 0)."""
        row = np.asarray(point, dtype=np.float64).reshape(1, -1)
        return cls.build(np.repeat(row, horizon, axis=0), 0.0, feasible_set)

    @property
    def horizon(self) -> int:
        return self.points.shape[0]

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    @property
    def variation(self) -> float:
        return path_variation(self.points)

    @property
    def coordinate_variation(self) -> np.ndarray:
        return coordinate_path_variation(self.points)

    def respects(self, budget_fn, slack: float = 0.0) -> bool:
        """True when every prefix of length t has variation <= budget_fn(t)."""
        prefix = prefix_variation(self.points)
        rounds = np.arange(1, self.horizon + 1)
        return bool(np.all(prefix <= budget_fn.evaluate(rounds) + slack))
