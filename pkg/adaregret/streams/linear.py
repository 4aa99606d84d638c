"""Linear loss streams f_t(w) = g_t^T w."""

import math

import numpy as np

from adaregret.errors import InvalidInputError
from adaregret.geometry.vector import ArrayLike, as_matrix, as_vector
from adaregret.streams.base import LossStream, philox


class LinearFixed(LossStream):
    """Linear losses with a prescribed gradient sequence."""

    kind = "linear_fixed"
    oblivious = True
    linear = True

    def __init__(self, gradients: np.ndarray) -> None:
        gradients = as_matrix(gradients, name="gradients")
        super().__init__(gradients.shape[0], gradients.shape[1])
        gradients.setflags(write=False)
        self.gradients = gradients

    def subgradient(self, t: int, w: np.ndarray) -> np.ndarray:
        self._check(t, w)
        return self.gradients[t - 1].copy()

    def loss(self, t: int, w: np.ndarray) -> float:
        self._check(t, w)
        return float(self.gradients[t - 1] @ w)


class LinearRademacher(LinearFixed):
    """
    g_t = sigma_t * L * u with i.i.d. fair signs sigma_t.

    Signs are drawn from ``philox(seed)`` in one call,
    ``2 * integers(0, 2, size=T) - 1``, so a seed fixes the whole sequence.
    """

    kind = "rademacher"

    def __init__(self, direction: ArrayLike, scale: float, horizon: int, seed: int) -> None:
        direction = as_vector(direction, name="direction")
        norm = float(np.linalg.norm(direction))
        if abs(norm - 1.0) > 1e-9:
            raise InvalidInputError(f"direction must be a unit vector, has norm {norm}")
        if not (math.isfinite(scale) and scale > 0.0):
            raise InvalidInputError(f"scale L must be positive, got {scale}")
        if horizon < 1:
            raise InvalidInputError(f"horizon must be >= 1, got {horizon}")
        self.direction = direction / norm
        self.scale = float(scale)
        self.seed = int(seed)
        self.signs = rademacher_signs(horizon, seed)
        super().__init__(self.signs[:, None] * (self.scale * self.direction))


def rademacher_signs(horizon: int, seed: int) -> np.ndarray:
    """The +/-1 sign sequence of a seeded Rademacher stream."""
    signs = 2 * philox(seed).integers(0, 2, size=horizon, dtype=np.int64) - 1
    signs.setflags(write=False)
    return signs


def gen_rademacher(direction: ArrayLike, scale: float, horizon: int, seed: int) -> LinearRademacher:
    """Adversarial linear stream with constant gradient norm L; G_T = L * sqrt(T)."""
    return LinearRademacher(direction, scale, horizon, seed)


class ZeroStream(LinearFixed):
    """All-zero gradients (f_t = 0)."""

    kind = "zero"

    def __init__(self, horizon: int, dimension: int) -> None:
        super().__init__(np.zeros((horizon, dimension)))


class ZeroPrefix(LossStream):
    """``zeros`` rounds of f_t = 0 followed by the rounds of ``inner``."""

    kind = "zero_prefix"

    def __init__(self, zeros: int, inner: LossStream) -> None:
        if zeros < 0:
            raise InvalidInputError(f"prefix length must be >= 0, got {zeros}")
        super().__init__(zeros + inner.horizon, inner.dimension)
        self.zeros = int(zeros)
        self.inner = inner
        self.oblivious = inner.oblivious
        self.linear = inner.linear

    @property
    def provides_losses(self) -> bool:
        return self.inner.provides_losses

    def energy_envelope(self) -> float:
        return self.inner.energy_envelope()

    def subgradient(self, t: int, w: np.ndarray) -> np.ndarray:
        self._check(t, w)
        if t <= self.zeros:
            return np.zeros(self.dimension)
        return self.inner.subgradient(t - self.zeros, w)

    def loss(self, t: int, w: np.ndarray) -> float | None:
        self._check(t, w)
        if t <= self.zeros:
            return 0.0
        return self.inner.loss(t - self.zeros, w)
