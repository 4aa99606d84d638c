"""Loss stream interface and single-query sessions."""

import math
from abc import ABC, abstractmethod

import numpy as np

from adaregret.errors import InvalidInputError, MultiQueryError, StreamExhaustedError
from adaregret.geometry.vector import check_dimension


def philox(seed: int) -> np.random.Generator:
    """Counter-based generator used by every seeded stream."""
    if seed < 0:
        raise InvalidInputError(f"seed must be nonnegative, got {seed}")
    return np.random.Generator(np.random.Philox(key=seed))


class LossStream(ABC):
    """
    Sequence of convex losses f_1, ..., f_T.

    ``subgradient(t, w)`` returns some g_t in the sub-differential of f_t at
    w. ``loss(t, w)`` evaluates f_t anywhere and is None when the stream
    only knows gradients. Rounds are 1-based.
    """

    kind: str = "base"
    #: gradients do not depend on the queried decision
    oblivious: bool = False
    #: f_t(w) = g_t^T w, so realized and linearized regret coincide
    linear: bool = False

    def __init__(self, horizon: int, dimension: int) -> None:
        if horizon < 0 or dimension < 1:
            raise InvalidInputError(f"invalid stream shape T={horizon}, N={dimension}")
        self.horizon = int(horizon)
        self.dimension = int(dimension)

    def _check(self, t: int, w: np.ndarray) -> None:
        if t < 1:
            raise InvalidInputError(f"round index must be >= 1, got {t}")
        if t > self.horizon:
            raise StreamExhaustedError(f"{self.kind} stream has only {self.horizon} rounds (asked for {t})")
        check_dimension(w, self.dimension, name="decision")

    @abstractmethod
    def subgradient(self, t: int, w: np.ndarray) -> np.ndarray:
        """A sub-gradient of f_t at w."""

    def loss(self, t: int, w: np.ndarray) -> float | None:
        """f_t(w), or None when the stream cannot evaluate losses."""
        return None

    @property
    def provides_losses(self) -> bool:
        return type(self).loss is not LossStream.loss

    def total_energy(self) -> float:
        """G_T of an oblivious stream, computable before any decision is made."""
        if not self.oblivious:
            raise InvalidInputError(f"{self.kind} stream gradients depend on the decisions")
        origin = np.zeros(self.dimension)
        return math.sqrt(
            math.fsum(float(g @ g) for g in (self.subgradient(t, origin) for t in range(1, self.horizon + 1)))
        )

    def energy_envelope(self) -> float:
        """An upper bound on G_T valid for every decision sequence."""
        return self.total_energy()


class StreamSession:
    """
    Causal access to a stream: one sub-gradient per round, rounds in order.

    Loss evaluations are not restricted; they never feed back into the
    learner.
    """

    def __init__(self, stream: LossStream) -> None:
        self.stream = stream
        self._last_round = 0

    def subgradient(self, t: int, w: np.ndarray) -> np.ndarray:
        if t <= self._last_round:
            raise MultiQueryError(f"round {t} was already observed; one gradient query per round")
        if t != self._last_round + 1:
            raise InvalidInputError(f"rounds must be observed in order (expected {self._last_round + 1}, got {t})")
        g = self.stream.subgradient(t, w)
        self._last_round = t
        return g
