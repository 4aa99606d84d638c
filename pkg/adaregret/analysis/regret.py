"""Dynamic regret accounting and bound-violation detection."""

import logging
import math

import numpy as np

from adaregret.analysis import bounds
from adaregret.config import get_settings
from adaregret.errors import InvalidInputError, PreconditionViolationError
from adaregret.geometry.base import FeasibleSet
from adaregret.geometry.box import Box
from adaregret.geometry.path import ComparatorPath
from adaregret.optimizer.state import StepRecord
from adaregret.optimizer.trace import Trace
from adaregret.scheduler.policies import (
    Adaptive,
    ConstantOracle,
    DoublingReset,
    PerCoordinate,
    RatePolicy,
    ScalarRatePolicy,
)
from adaregret.schemas import RegretReport
from adaregret.streams.base import LossStream

logger = logging.getLogger(__name__)


def dynamic_regret(
    records: list[StepRecord],
    comparator: ComparatorPath,
    stream: LossStream,
) -> RegretReport:
    """
    Realized regret sum_t f_t(w_t) - f_t(w_t*) and its linearization
    sum_t g_t^T (w_t - w_t*).

    Streams that cannot evaluate f_t yield a linearized-only report.
    """
    if not records:
        raise InvalidInputError("no records")
    if len(records) != comparator.horizon:
        raise InvalidInputError(
            f"{len(records)} records but the comparator has {comparator.horizon} points"
        )
    trace = Trace.from_records(records)
    if trace.decisions.shape[1] != comparator.dimension:
        raise InvalidInputError("comparator dimension does not match the decisions")
    gaps = trace.decisions - comparator.points
    linearized = math.fsum(np.einsum("tn,tn->t", trace.gradients, gaps))

    realized: float | None
    if stream.linear:
        realized = linearized
    elif stream.provides_losses:
        realized = math.fsum(
            stream.loss(r.round, r.decision) - stream.loss(r.round, w_star)
            for r, w_star in zip(records, comparator.points)
        )
    else:
        realized = None

    norms = trace.gradient_norms
    return RegretReport(
        realized_dynamic_regret=realized,
        linearized_regret=linearized,
        total_energy=math.sqrt(math.fsum(norms**2)),
        max_grad_norm=float(norms.max()),
        path_variation=comparator.variation,
        linearized_only=realized is None,
    )


def diagnostics(records: list[StepRecord], comparator: ComparatorPath) -> tuple[np.ndarray, np.ndarray]:
    """Per-round distance D_t = ||w_t - w_t*|| and comparator move P_t = ||w_{t+1}* - w_t*|| (0 at T)."""
    if len(records) != comparator.horizon:
        raise InvalidInputError("records and comparator lengths differ")
    decisions = np.stack([r.decision for r in records])
    distance = np.linalg.norm(decisions - comparator.points, axis=1)
    moves = np.append(np.linalg.norm(np.diff(comparator.points, axis=0), axis=1), 0.0)
    return distance, moves


def exceeds(value: float, bound: float, tolerance: float | None = None) -> bool:
    """value > bound beyond the relative slack tolerance * (1 + |bound|)."""
    tolerance = get_settings().bound_tolerance if tolerance is None else tolerance
    return value > bound + tolerance * (1.0 + abs(bound))


def evaluate_bounds(
    report: RegretReport,
    records: list[StepRecord],
    comparator: ComparatorPath,
    feasible_set: FeasibleSet,
    policy: RatePolicy,
    tolerance: float | None = None,
) -> RegretReport:
    """
    Fill every bound value and check the ones the policy guarantees.

    Bounds are evaluated with P = the comparator's budget. A guaranteed bound
    below the linearized regret, a failed rate precondition or realized
    regret above its linearization are recorded as violations.
    """
    trace = Trace.from_records(records)
    D = feasible_set.diameter()
    P = comparator.budget
    G_T = report.total_energy
    L = report.max_grad_norm
    T = trace.horizon
    regret = report.linearized_regret
    values: dict[str, float] = {}
    checked: list[str] = []
    violations: list[str] = []

    if isinstance(policy, ScalarRatePolicy) and policy.segment(1) is None:
        try:
            values["realized_rates"] = bounds.bound_realized_rates(D, P, trace.rates, trace.gradient_norms)
            checked.append("realized_rates")
        except PreconditionViolationError as e:
            violations.append(f"realized_rates precondition: {e}")

    values["constant"] = bounds.bound_constant(D, P, G_T)
    if isinstance(policy, ConstantOracle) and P <= policy.budget and G_T <= policy.total_energy * (1.0 + 1e-12):
        values["constant_tuned"] = bounds.bound_constant(D, policy.budget, policy.total_energy)
        checked.append("constant_tuned")

    p_hat = policy.p_hat if isinstance(policy, Adaptive) else None
    values["adaptive"] = bounds.bound_adaptive(D, P, p_hat, G_T)
    if isinstance(policy, Adaptive):
        checked.append("adaptive")

    if isinstance(feasible_set, Box):
        widths = feasible_set.coordinate_diameters()
        coordinate_energy = np.sqrt(np.sum(trace.gradients**2, axis=0))
        coordinate_budget = comparator.coordinate_variation
        p_hat_i = policy.p_hat if isinstance(policy, PerCoordinate) else None
        values["per_coordinate"] = bounds.bound_per_coordinate(
            widths, coordinate_budget, coordinate_energy, p_hat_i
        )
        if isinstance(policy, PerCoordinate):
            checked.append("per_coordinate")

    if isinstance(policy, DoublingReset):
        doubling = bounds.bounds_doubling(D, policy.budget_fn, T, trace.gradient_norms)
        values["doubling_sum"] = doubling.sum_form
        values["doubling_max"] = doubling.max_form
        values["doubling_segmented"] = doubling.segmented
        # rates restart at each segment and must not increase inside one
        norms = trace.gradient_norms
        for k in np.unique(trace.segments):
            inside = trace.segments == k
            try:
                bounds.bound_realized_rates(D, P, trace.rates[inside], norms[inside])
            except PreconditionViolationError as e:
                violations.append(f"realized_rates precondition (segment {k}): {e}")
        slack = get_settings().membership_tolerance * D
        if comparator.respects(policy.budget_fn, slack):
            checked.extend(["doubling_sum", "doubling_max", "doubling_segmented"])
        else:
            logger.debug("Comparator exceeds the doubling budget on some prefix; doubling bounds unchecked")

    for name in checked:
        if exceeds(regret, values[name], tolerance):
            violations.append(f"{name}: linearized regret {regret:.17g} > bound {values[name]:.17g}")

    realized = report.realized_dynamic_regret
    if realized is not None and exceeds(realized, regret, tolerance):
        violations.append(f"convexity: realized regret {realized:.17g} > linearized {regret:.17g}")

    lower = {
        "sum": bounds.lower_bound_sum(D, P, G_T),
        "max": bounds.lower_bound_max(D, P, L, T),
    }
    for message in violations:
        logger.warning("Bound violation: %s", message)
    return report.model_copy(update={"bounds": values, "lower_bounds": lower, "violations": violations})
