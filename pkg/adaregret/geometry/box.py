"""Axis-aligned hyper-rectangle feasible set."""

from dataclasses import dataclass, field

import numpy as np

from adaregret.errors import InvalidInputError
from adaregret.geometry.base import FeasibleSet
from adaregret.geometry.vector import as_vector, check_dimension


@dataclass(frozen=True, eq=False)
class Box(FeasibleSet):
    """Hyper-rectangle {w : lower <= w <= upper}; degenerate axes are allowed."""

    lower: np.ndarray
    upper: np.ndarray
    kind: str = field(default="box", init=False)

    def __post_init__(self) -> None:
        lower = as_vector(self.lower, name="box lower")
        upper = as_vector(self.upper, name="box upper")
        if lower.size != upper.size:
            raise InvalidInputError(
                f"box bounds dimension mismatch ({lower.size} vs {upper.size})"
            )
        if np.any(lower > upper):
            raise InvalidInputError("box requires lower[i] <= upper[i] for every i")
        if not np.any(lower < upper):
            raise InvalidInputError("box must have positive width on at least one axis")
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def cube(cls, dimension: int, half_width: float = 1.0) -> "Box":
        """Cube [-half_width, half_width]^dimension."""
        return cls(
            lower=np.full(dimension, -half_width),
            upper=np.full(dimension, half_width),
        )

    @property
    def dimension(self) -> int:
        return self.lower.size

    def project(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=np.float64)
        check_dimension(points, self.dimension, name="point")
        return np.clip(points, self.lower, self.upper)

    def diameter(self) -> float:
        return float(np.linalg.norm(self.upper - self.lower))

    def coordinate_diameters(self) -> np.ndarray:
        return self.upper - self.lower

    def residual(self, point: np.ndarray) -> float:
        point = np.asarray(point, dtype=np.float64)
        check_dimension(point, self.dimension, name="point")
        below = np.max(self.lower - point)
        above = np.max(point - self.upper)
        return max(0.0, float(below), float(above))

    def min_linear(self, directions: np.ndarray) -> np.ndarray | float:
        directions = np.asarray(directions, dtype=np.float64)
        check_dimension(directions, self.dimension, name="direction")
        values = np.minimum(directions * self.lower, directions * self.upper).sum(axis=-1)
        return float(values) if np.ndim(values) == 0 else values

    def linear_minimizer(self, directions: np.ndarray) -> np.ndarray:
        """Per-coordinate sign snap; coordinates with s_i = 0 take the midpoint."""
        directions = np.asarray(directions, dtype=np.float64)
        check_dimension(directions, self.dimension, name="direction")
        midpoint = 0.5 * (self.lower + self.upper)
        snapped = np.where(directions > 0.0, self.lower, self.upper)
        return np.where(directions == 0.0, midpoint, snapped)

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        return self.lower.copy(), self.upper.copy()

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return self.lower + rng.random((size, self.dimension)) * (self.upper - self.lower)
