"""Euclidean ball feasible set."""

from dataclasses import dataclass, field

import numpy as np

from adaregret.errors import InvalidInputError
from adaregret.geometry.base import FeasibleSet
from adaregret.geometry.vector import as_vector, check_dimension

# Points within this relative rounding band of the sphere count as inside,
# which keeps projection idempotent in floating point.
_SPHERE_SLACK = 8 * np.finfo(np.float64).eps


@dataclass(frozen=True, eq=False)
class Ball(FeasibleSet):
    """Closed ball {w : ||w - center|| <= radius}."""

    center: np.ndarray
    radius: float
    kind: str = field(default="ball", init=False)

    def __post_init__(self) -> None:
        center = as_vector(self.center, name="ball center")
        center.setflags(write=False)
        object.__setattr__(self, "center", center)
        radius = float(self.radius)
        if not np.isfinite(radius) or radius <= 0.0:
            raise InvalidInputError(f"ball radius must be positive and finite, got {self.radius}")
        object.__setattr__(self, "radius", radius)

    @classmethod
    def centered(cls, dimension: int, radius: float = 1.0) -> "Ball":
        """Ball of the given radius around the origin of R^dimension."""
        return cls(center=np.zeros(dimension), radius=radius)

    @property
    def dimension(self) -> int:
        return self.center.size

    def project(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=np.float64)
        check_dimension(points, self.dimension, name="point")
        offset = points - self.center
        norms = np.linalg.norm(offset, axis=-1, keepdims=True)
        outside = norms > self.radius * (1.0 + _SPHERE_SLACK)
        scale = self.radius / np.where(outside, norms, 1.0)
        return np.where(outside, self.center + offset * scale, points)

    def diameter(self) -> float:
        return 2.0 * self.radius

    def coordinate_diameters(self) -> np.ndarray:
        return np.full(self.dimension, 2.0 * self.radius)

    def residual(self, point: np.ndarray) -> float:
        point = np.asarray(point, dtype=np.float64)
        check_dimension(point, self.dimension, name="point")
        return max(0.0, float(np.linalg.norm(point - self.center)) - self.radius)

    def min_linear(self, directions: np.ndarray) -> np.ndarray | float:
        directions = np.asarray(directions, dtype=np.float64)
        check_dimension(directions, self.dimension, name="direction")
        values = directions @ self.center - self.radius * np.linalg.norm(directions, axis=-1)
        return float(values) if np.ndim(values) == 0 else values

    def linear_minimizer(self, directions: np.ndarray) -> np.ndarray:
        """Point at radius opposite to the direction; the center for s = 0."""
        directions = np.asarray(directions, dtype=np.float64)
        check_dimension(directions, self.dimension, name="direction")
        norms = np.linalg.norm(directions, axis=-1, keepdims=True)
        nonzero = norms > 0.0
        unit = directions / np.where(nonzero, norms, 1.0)
        return np.where(nonzero, self.center - self.radius * unit, self.center)

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        return self.center - self.radius, self.center + self.radius

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        directions = rng.standard_normal((size, self.dimension))
        norms = np.linalg.norm(directions, axis=1, keepdims=True)
        directions /= np.where(norms > 0.0, norms, 1.0)
        radii = self.radius * rng.random((size, 1)) ** (1.0 / self.dimension)
        return self.project(self.center + radii * directions)
