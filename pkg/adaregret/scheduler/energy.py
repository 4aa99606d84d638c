"""Running gradient energy G_t = sqrt(G_{t-1}^2 + ||g_t||^2)."""

import math
from dataclasses import dataclass

import numpy as np

from adaregret.geometry.vector import ArrayLike, as_vector, check_dimension


@dataclass(frozen=True, eq=False)
class GradientEnergy:
    """
    Root-sum-of-squares accumulator, stored as the sum of squares.

    ``coordinate_squared`` is present only for per-coordinate policies and
    holds sum_t g_{t,i}^2 for every coordinate.
    """

    squared: float = 0.0
    coordinate_squared: np.ndarray | None = None

    @classmethod
    def zero(cls, dimension: int, per_coordinate: bool = False) -> "GradientEnergy":
        return cls(0.0, np.zeros(dimension) if per_coordinate else None)

    @property
    def G(self) -> float:
        return math.sqrt(self.squared)

    @property
    def per_coordinate(self) -> np.ndarray | None:
        if self.coordinate_squared is None:
            return None
        return np.sqrt(self.coordinate_squared)

    def reset(self) -> "GradientEnergy":
        """Zero accumulator of the same shape."""
        if self.coordinate_squared is None:
            return GradientEnergy()
        return GradientEnergy(0.0, np.zeros_like(self.coordinate_squared))


def update_energy(state: GradientEnergy, g: ArrayLike) -> GradientEnergy:
    """Fold one sub-gradient into the accumulator; a zero gradient leaves it unchanged."""
    g = as_vector(g, name="gradient")
    coordinate_squared = None
    if state.coordinate_squared is not None:
        check_dimension(g, state.coordinate_squared.size, name="gradient")
        coordinate_squared = state.coordinate_squared + g * g
    return GradientEnergy(state.squared + float(g @ g), coordinate_squared)
