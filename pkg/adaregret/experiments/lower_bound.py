"""Monte Carlo study of adaptive regret on adversarial Rademacher streams."""

import logging
import math
from dataclasses import dataclass

import numpy as np

from adaregret.analysis import bound_adaptive, lower_bound_max, lower_bound_sum
from adaregret.errors import UsageError
from adaregret.experiments.factory import build_policy, build_set, initial_decision
from adaregret.optimizer import run_batch
from adaregret.schemas import ExperimentConfig, PolicyKind, StreamKind
from adaregret.streams import ZeroStream, rademacher_signs

logger = logging.getLogger(__name__)

LOWER_BOUND_COLUMNS = ("repetition", "regret", "G_T", "lower_bound_sum", "lower_bound_max", "bound_adaptive")


@dataclass(frozen=True, eq=False)
class LowerBoundStudy:
    """Per-repetition regret against the best fixed point, with the bounds it sits between."""

    regret: np.ndarray
    total_energy: np.ndarray
    lower_sum: np.ndarray
    lower_max: float
    upper: np.ndarray
    diameter: float

    @property
    def mean_regret(self) -> float:
        return float(np.mean(self.regret))

    @property
    def rows(self) -> list[list]:
        return [
            [
                r,
                float(self.regret[r]),
                float(self.total_energy[r]),
                float(self.lower_sum[r]),
                self.lower_max,
                float(self.upper[r]),
            ]
            for r in range(self.regret.size)
        ]


def lower_bound_study(config: ExperimentConfig) -> LowerBoundStudy:
    """
    Run every repetition in lock-step on g_t = sigma_t * L * u with the
    scalar policy of ``config``; repetition r draws its signs with seed + r.

    Static comparator only (P = 0): regret is sum_t g_t^T w_t minus
    min over K of (sum_t g_t)^T w.
    """
    if config.stream.kind is not StreamKind.RADEMACHER:
        raise UsageError(["stream.kind: the lower-bound study needs a rademacher stream"])
    if config.policy.kind in (PolicyKind.PER_COORDINATE, PolicyKind.DOUBLING):
        raise UsageError(["policy.kind: the lower-bound study needs a non-restarting scalar policy"])
    feasible_set = build_set(config.feasible_set)
    D = feasible_set.diameter()
    n = config.dimension
    T = config.horizon
    L = config.stream.scale
    direction = np.eye(n)[0] if config.stream.direction is None else np.array(config.stream.direction)
    direction = direction / np.linalg.norm(direction)
    signs = np.stack([rademacher_signs(T, config.seed + r) for r in range(config.repetitions)])
    # constant-oracle tuning uses the known energy L * sqrt(T)
    policy = build_policy(
        config.model_copy(update={"policy": config.policy.model_copy(update={"g_total": L * math.sqrt(T)})}),
        feasible_set,
        ZeroStream(T, n),
        0.0,
    )

    def gradients(t: int, decisions: np.ndarray) -> np.ndarray:
        return (signs[:, t - 1] * L)[:, None] * direction[None, :]

    batch = run_batch(feasible_set, initial_decision(config, feasible_set), policy, T, gradients, config.repetitions)
    totals = (signs.sum(axis=1) * L)[:, None] * direction[None, :]
    regret = batch.linear_loss - np.atleast_1d(feasible_set.min_linear(totals))
    energy = batch.total_energy
    logger.info("Lower-bound study: %d runs, mean regret %.6g", config.repetitions, float(regret.mean()))
    return LowerBoundStudy(
        regret=regret,
        total_energy=energy,
        lower_sum=np.array([lower_bound_sum(D, 0.0, g) for g in energy]),
        lower_max=lower_bound_max(D, 0.0, L, T),
        upper=np.array([bound_adaptive(D, 0.0, config.policy.p_hat, g) for g in energy]),
        diameter=D,
    )
