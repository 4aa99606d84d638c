"""Path budget functions P(T) for growing horizons."""

import math
from abc import ABC, abstractmethod

import numpy as np

from adaregret.errors import InvalidInputError

_GRID = 1024
_RELATIVE_SLACK = 1e-12


class PathBudgetFunction(ABC):
    """
    Nondecreasing T -> P(T), clamped to D*(T-1).

    Subclasses implement ``_raw``; construction validates monotonicity and
    the almost sub-additivity P(T1 + T2) <= P(T1) + P(T2 + 1) on
    T1, T2 in {1..grid}.
    """

    name: str = "budget"

    def __init__(self, diameter: float, grid: int = _GRID) -> None:
        if not (math.isfinite(diameter) and diameter > 0.0):
            raise InvalidInputError(f"diameter must be positive, got {diameter}")
        self.diameter = float(diameter)
        self.validate(grid)

    @abstractmethod
    def _raw(self, horizons: np.ndarray) -> np.ndarray:
        """Unclamped budget for an array of horizons."""

    def evaluate(self, horizons: np.ndarray) -> np.ndarray:
        horizons = np.asarray(horizons, dtype=np.float64)
        return np.minimum(self._raw(horizons), self.diameter * (horizons - 1.0))

    def __call__(self, horizon: int) -> float:
        if horizon < 1:
            raise InvalidInputError(f"horizon must be >= 1, got {horizon}")
        return float(self.evaluate(np.array([horizon]))[0])

    def validate(self, grid: int = _GRID) -> None:
        """Check nonnegativity, monotonicity and almost sub-additivity on a grid."""
        values = self.evaluate(np.arange(1, 2 * grid + 1))
        scale = 1.0 + float(np.max(np.abs(values)))
        if np.any(values < 0.0) or not np.all(np.isfinite(values)):
            raise InvalidInputError(f"{self.name}: budget must be finite and nonnegative")
        if np.any(np.diff(values) < -_RELATIVE_SLACK * scale):
            raise InvalidInputError(f"{self.name}: budget must be nondecreasing")
        t1 = np.arange(1, grid + 1)[:, None]
        t2 = np.arange(1, grid + 1)[None, :]
        lhs = values[t1 + t2 - 1]
        rhs = values[t1 - 1] + values[t2]
        if np.any(lhs > rhs + _RELATIVE_SLACK * scale):
            raise InvalidInputError(
                f"{self.name}: P(T1+T2) <= P(T1) + P(T2+1) fails on the validation grid"
            )


class ConstantBudget(PathBudgetFunction):
    """P(T) = min(P, D*(T-1))."""

    name = "constant"

    def __init__(self, budget: float, diameter: float, grid: int = _GRID) -> None:
        if not (math.isfinite(budget) and budget >= 0.0):
            raise InvalidInputError(f"budget must be nonnegative, got {budget}")
        self.budget = float(budget)
        super().__init__(diameter, grid)

    def _raw(self, horizons: np.ndarray) -> np.ndarray:
        return np.full_like(horizons, self.budget)


class SqrtBudget(PathBudgetFunction):
    """P(T) = min(c*sqrt(T), D*(T-1))."""

    name = "sqrt"

    def __init__(self, c: float, diameter: float, grid: int = _GRID) -> None:
        if not (math.isfinite(c) and c >= 0.0):
            raise InvalidInputError(f"c must be nonnegative, got {c}")
        self.c = float(c)
        super().__init__(diameter, grid)

    def _raw(self, horizons: np.ndarray) -> np.ndarray:
        return self.c * np.sqrt(horizons)


class LinearBudget(PathBudgetFunction):
    """P(T) = min(c*T, D*(T-1))."""

    name = "linear"

    def __init__(self, c: float, diameter: float, grid: int = _GRID) -> None:
        if not (math.isfinite(c) and c >= 0.0):
            raise InvalidInputError(f"c must be nonnegative, got {c}")
        self.c = float(c)
        super().__init__(diameter, grid)

    def _raw(self, horizons: np.ndarray) -> np.ndarray:
        return self.c * horizons
