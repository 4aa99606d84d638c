"""Drive the engine over a loss stream."""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from adaregret.errors import InvalidInputError, StreamExhaustedError, TruncatedRunError
from adaregret.geometry.base import FeasibleSet
from adaregret.geometry.vector import ArrayLike, as_vector, check_dimension
from adaregret.optimizer.engine import init, step
from adaregret.optimizer.state import StepRecord
from adaregret.scheduler.policies import PerCoordinate, RatePolicy, ScalarRatePolicy
from adaregret.streams.base import LossStream, StreamSession

logger = logging.getLogger(__name__)


def run(
    stream: LossStream,
    feasible_set: FeasibleSet,
    w1: ArrayLike,
    policy: RatePolicy,
    horizon: int,
) -> list[StepRecord]:
    """
    Play ``horizon`` rounds; w_t is fixed before g_t is revealed.

    Raises TruncatedRunError, carrying the records produced so far, when the
    stream runs out before the horizon.
    """
    if horizon < 1:
        raise InvalidInputError(f"horizon must be >= 1, got {horizon}")
    session = StreamSession(stream)
    state = init(feasible_set, w1, per_coordinate=isinstance(policy, PerCoordinate))
    records: list[StepRecord] = []
    for t in range(1, horizon + 1):
        try:
            g = session.subgradient(t, state.decision)
        except StreamExhaustedError as e:
            raise TruncatedRunError(f"stream exhausted after {len(records)} of {horizon} rounds", records) from e
        state, record = step(state, g, policy)
        records.append(record)
    return records


@dataclass(frozen=True, eq=False)
class BatchResult:
    """Per-run totals of a batched run: sum_t g_t^T w_t, G_T^2 and w_{T+1}."""

    linear_loss: np.ndarray
    energy_squared: np.ndarray
    final_decision: np.ndarray

    @property
    def total_energy(self) -> np.ndarray:
        return np.sqrt(self.energy_squared)


def run_batch(
    feasible_set: FeasibleSet,
    w1: ArrayLike,
    policy: ScalarRatePolicy,
    horizon: int,
    gradient_fn: Callable[[int, np.ndarray], np.ndarray],
    repetitions: int,
) -> BatchResult:
    """
    Advance ``repetitions`` independent runs in lock-step.

    ``gradient_fn(t, W)`` receives the (R, N) decisions of round t and
    returns the (R, N) sub-gradients. Per-run semantics match ``step``:
    runs still in their zero-gradient prefix stay put. Restarting policies
    are not supported.
    """
    if horizon < 1 or repetitions < 1:
        raise InvalidInputError("horizon and repetitions must be >= 1")
    if not isinstance(policy, ScalarRatePolicy) or policy.segment(1) is not None:
        raise InvalidInputError("batched runs support non-restarting scalar policies only")
    w1 = as_vector(w1, name="w1")
    check_dimension(w1, feasible_set.dimension, name="w1")
    w1 = feasible_set.project(w1)
    decisions = np.repeat(w1[None, :], repetitions, axis=0)
    linear_loss = np.zeros(repetitions)
    energy_squared = np.zeros(repetitions)
    for t in range(1, horizon + 1):
        g = np.asarray(gradient_fn(t, decisions), dtype=np.float64)
        if g.shape != decisions.shape:
            raise InvalidInputError(f"gradient batch has shape {g.shape}, expected {decisions.shape}")
        linear_loss += np.einsum("rn,rn->r", g, decisions)
        energy_squared += np.einsum("rn,rn->r", g, g)
        active = energy_squared > 0.0
        if not np.any(active):
            continue
        rates = np.zeros(repetitions)
        rates[active] = policy.rate_batch(np.sqrt(energy_squared[active]), t)
        stepped = feasible_set.project(decisions - rates[:, None] * g)
        decisions = np.where(active[:, None], stepped, decisions)
    logger.debug("Batched %d runs over %d rounds", repetitions, horizon)
    return BatchResult(linear_loss=linear_loss, energy_squared=energy_squared, final_decision=decisions)
