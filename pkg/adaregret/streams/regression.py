"""Sequential linear regression under absolute error."""

import math

import numpy as np

from adaregret.errors import InvalidInputError
from adaregret.geometry.ball import Ball
from adaregret.geometry.base import FeasibleSet
from adaregret.geometry.path import ComparatorPath, path_variation
from adaregret.geometry.vector import as_matrix, as_vector
from adaregret.streams.base import LossStream, philox


class AbsoluteRegression(LossStream):
    """f_t(w) = |w^T x_t - d_t|; the sub-gradient is 0 exactly at the kink."""

    kind = "regression"

    def __init__(self, features: np.ndarray, targets: np.ndarray) -> None:
        features = as_matrix(features, name="features")
        targets = as_vector(targets, name="targets")
        if targets.size != features.shape[0]:
            raise InvalidInputError(
                f"{features.shape[0]} feature rows but {targets.size} targets"
            )
        super().__init__(features.shape[0], features.shape[1])
        features.setflags(write=False)
        targets.setflags(write=False)
        self.features = features
        self.targets = targets

    def residual(self, t: int, w: np.ndarray) -> float:
        self._check(t, w)
        return float(self.features[t - 1] @ w) - float(self.targets[t - 1])

    def subgradient(self, t: int, w: np.ndarray) -> np.ndarray:
        return np.sign(self.residual(t, w)) * self.features[t - 1]

    def loss(self, t: int, w: np.ndarray) -> float:
        return abs(self.residual(t, w))

    def energy_envelope(self) -> float:
        """||g_t|| <= ||x_t|| whatever the decision."""
        return math.sqrt(math.fsum(np.einsum("tn,tn->t", self.features, self.features)))


def gen_regression(
    horizon: int,
    dimension: int,
    drift_rate: float,
    noise: float,
    seed: int,
    feasible_set: FeasibleSet | None = None,
) -> tuple[AbsoluteRegression, ComparatorPath]:
    """
    Regression stream with a drifting ground truth, returned as a comparator.

    Draw order from ``philox(seed)``: features (T, N), start point (N),
    drift directions (T-1, N), noise (T). The ground truth starts at the
    projection of half a standard normal draw and moves ``drift_rate`` per
    round along a random unit direction, projected back into K.
    """
    if horizon < 1 or dimension < 1:
        raise InvalidInputError(f"invalid shape T={horizon}, N={dimension}")
    if not (math.isfinite(drift_rate) and drift_rate >= 0.0):
        raise InvalidInputError(f"drift_rate must be >= 0, got {drift_rate}")
    if not (math.isfinite(noise) and noise >= 0.0):
        raise InvalidInputError(f"noise must be >= 0, got {noise}")
    feasible_set = feasible_set or Ball.centered(dimension)
    if feasible_set.dimension != dimension:
        raise InvalidInputError("feasible set dimension does not match the stream")

    rng = philox(seed)
    features = rng.standard_normal((horizon, dimension))
    start = feasible_set.project(0.5 * rng.standard_normal(dimension))
    directions = rng.standard_normal((horizon - 1, dimension))
    norms = np.linalg.norm(directions, axis=1, keepdims=True)
    directions /= np.where(norms > 0.0, norms, 1.0)
    perturbation = rng.standard_normal(horizon)

    truth = np.empty((horizon, dimension))
    truth[0] = start
    for t in range(1, horizon):
        truth[t] = feasible_set.project(truth[t - 1] + drift_rate * directions[t - 1])
    targets = np.einsum("tn,tn->t", features, truth) + noise * perturbation

    comparator = ComparatorPath.build(truth, path_variation(truth), feasible_set)
    return AbsoluteRegression(features, targets), comparator
