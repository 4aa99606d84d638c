"""Online sub-gradient descent with projection."""

import logging
from dataclasses import replace

import numpy as np

from adaregret.errors import (
    ContractViolationError,
    InvalidInputError,
    OracleUndefinedError,
    RateUndefinedError,
    UnsupportedSetError,
)
from adaregret.geometry.base import FeasibleSet
from adaregret.geometry.box import Box
from adaregret.geometry.vector import ArrayLike, as_vector, check_dimension
from adaregret.optimizer.state import OptimizerState, StepKind, StepRecord
from adaregret.scheduler.energy import GradientEnergy, update_energy
from adaregret.scheduler.policies import PerCoordinate, RatePolicy, ScalarRatePolicy

logger = logging.getLogger(__name__)


def init(feasible_set: FeasibleSet, w1: ArrayLike, per_coordinate: bool = False) -> OptimizerState:
    """State at round 1 with zero energy; an infeasible w1 is projected with a note."""
    w1 = as_vector(w1, name="w1")
    check_dimension(w1, feasible_set.dimension, name="w1")
    notes: tuple[str, ...] = ()
    if not feasible_set.contains(w1):
        projected = feasible_set.project(w1)
        logger.warning("Initial decision %s lies outside the feasible set; projected to %s", w1, projected)
        notes = (f"initial decision projected onto the feasible set (moved {np.linalg.norm(projected - w1):.6g})",)
        w1 = projected
    w1.setflags(write=False)
    return OptimizerState(
        feasible_set=feasible_set,
        decision=w1,
        energy=GradientEnergy.zero(feasible_set.dimension, per_coordinate),
        initial=w1,
        anchor=w1,
        notes=notes,
    )


def _observe(state: OptimizerState, g: ArrayLike) -> np.ndarray:
    g = as_vector(g, name="gradient")
    check_dimension(g, state.feasible_set.dimension, name="gradient")
    return g


def _enter_segment(state: OptimizerState, policy: RatePolicy) -> OptimizerState:
    """Restart energy (and optionally the iterate) when a new doubling segment begins."""
    segment = policy.segment(state.round)
    if segment is None or segment.k == state.segment:
        return state
    decision = state.initial if policy.reset_decision else state.decision
    logger.debug("Round %d starts segment %d (budget %s)", state.round, segment.k, segment.budget)
    return OptimizerState(
        feasible_set=state.feasible_set,
        decision=decision,
        energy=state.energy.reset(),
        initial=state.initial,
        anchor=decision,
        round=state.round,
        zero_prefix=True,
        segment=segment.k,
        notes=state.notes,
    )


def _skip(state: OptimizerState, g: np.ndarray, energy: GradientEnergy) -> tuple[OptimizerState, StepRecord]:
    record = StepRecord(
        round=state.round,
        decision=state.decision,
        gradient=g,
        rate=None,
        next_decision=state.decision,
        energy=energy.G,
        segment=state.segment,
        kind=StepKind.SKIPPED,
    )
    return state.advance(energy=energy), record


def step(
    state: OptimizerState,
    g: ArrayLike,
    policy: RatePolicy,
) -> tuple[OptimizerState, StepRecord]:
    """
    Play one round: fold g_t into the energy, ask the policy for eta_t and
    set w_{t+1} = project(w_t - eta_t * g_t).

    Zero gradients during the zero-gradient prefix are skipped; a zero
    gradient afterwards is a zero step with the unchanged rate.
    """
    if isinstance(policy, PerCoordinate):
        return step_per_coordinate(state, g, policy)
    if not isinstance(policy, ScalarRatePolicy):
        raise InvalidInputError(f"unsupported rate policy {type(policy).__name__}")
    g = _observe(state, g)
    state = _enter_segment(state, policy)
    energy = update_energy(state.energy, g)
    moving = bool(np.any(g))
    if state.zero_prefix and not moving:
        return _skip(state, g, energy)

    try:
        rate = policy.rate(energy, state.round)
    except (RateUndefinedError, OracleUndefinedError) as e:
        raise ContractViolationError(
            f"rate undefined at round {state.round} although G_t = {energy.G} "
            f"and ||g_t|| = {np.linalg.norm(g)}"
        ) from e

    if moving:
        next_decision = state.feasible_set.project(state.decision - rate * g)
        kind = StepKind.DESCENT
    else:
        next_decision = state.decision
        kind = StepKind.ZERO_STEP
    record = StepRecord(
        round=state.round,
        decision=state.decision,
        gradient=g,
        rate=rate,
        next_decision=next_decision,
        energy=energy.G,
        segment=state.segment,
        kind=kind,
    )
    return state.advance(decision=next_decision, energy=energy, zero_prefix=False), record


def step_per_coordinate(
    state: OptimizerState,
    g: ArrayLike,
    policy: PerCoordinate,
) -> tuple[OptimizerState, StepRecord]:
    """
    Coordinate-wise variant: w_{t+1,i} = clamp(w_{t,i} - eta_{t,i} g_{t,i}).

    Only hyper-rectangles are supported, where coordinate-wise clamping is
    the Euclidean projection. Dormant coordinates (no gradient yet) stay put.
    """
    feasible_set = state.feasible_set
    if not isinstance(feasible_set, Box):
        raise UnsupportedSetError(
            f"per-coordinate steps need a box feasible set, got {feasible_set.kind}"
        )
    if policy.coordinate_diameters.size != feasible_set.dimension:
        raise InvalidInputError("per-coordinate policy dimension does not match the feasible set")
    g = _observe(state, g)
    if state.energy.coordinate_squared is None:
        if state.energy.squared != 0.0:
            raise ContractViolationError("scalar energy cannot be converted mid-run")
        state = replace(state, energy=GradientEnergy.zero(feasible_set.dimension, True))
    energy = update_energy(state.energy, g)
    moving = bool(np.any(g))
    if state.zero_prefix and not moving:
        return _skip(state, g, energy)

    rates = policy.rates(energy)
    next_decision = feasible_set.project(state.decision - rates.rates * g)
    next_decision = np.where(rates.dormant, state.decision, next_decision)
    record = StepRecord(
        round=state.round,
        decision=state.decision,
        gradient=g,
        rate=rates.rates,
        next_decision=next_decision,
        energy=energy.G,
        segment=state.segment,
        kind=StepKind.DESCENT if moving else StepKind.ZERO_STEP,
        dormant=rates.dormant,
    )
    return state.advance(decision=next_decision, energy=energy, zero_prefix=False), record
