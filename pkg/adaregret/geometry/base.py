"""Feasible set interface."""

from abc import ABC, abstractmethod

import numpy as np


class FeasibleSet(ABC):
    """
    Convex decision set K with a closed-form Euclidean projection.

    Array-valued methods operate on the last axis, so a (R, N) batch of
    points is handled in one call. Custom sets subclass this and implement
    every abstract method; the optimizer relies on nothing else.
    """

    kind: str = "base"

    @property
    @abstractmethod
    def dimension(self) -> int:
        """Number of coordinates N."""

    @abstractmethod
    def project(self, points: np.ndarray) -> np.ndarray:
        """Euclidean projection; points already inside are returned unchanged."""

    @abstractmethod
    def diameter(self) -> float:
        """sup over w, v in K of ||w - v||."""

    @abstractmethod
    def coordinate_diameters(self) -> np.ndarray:
        """Width of the set's projection onto each coordinate axis."""

    @abstractmethod
    def residual(self, point: np.ndarray) -> float:
        """Largest constraint violation of ``point`` (0 when inside)."""

    @abstractmethod
    def min_linear(self, directions: np.ndarray) -> np.ndarray | float:
        """min over w in K of s^T w, for each direction s on the last axis."""

    @abstractmethod
    def linear_minimizer(self, directions: np.ndarray) -> np.ndarray:
        """A point of K attaining ``min_linear`` for each direction."""

    @abstractmethod
    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        """Axis-aligned box (lower, upper) containing K."""

    @abstractmethod
    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """``size`` points drawn from K, shape (size, N)."""

    def contains(self, point: np.ndarray, tolerance: float = 0.0) -> bool:
        """Membership test with an absolute slack on the constraint residuals."""
        return self.residual(point) <= tolerance
