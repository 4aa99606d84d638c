"""Build library objects from a validated ExperimentConfig."""

import numpy as np

from adaregret.errors import InfeasibleBudgetError, OracleUndefinedError, SizeLimitError, UsageError
from adaregret.geometry import Ball, Box, ComparatorPath, FeasibleSet
from adaregret.scheduler import (
    Adaptive,
    ConstantBudget,
    ConstantOracle,
    DoublingReset,
    LinearBudget,
    PathBudgetFunction,
    PerCoordinate,
    RatePolicy,
    SqrtBudget,
)
from adaregret.schemas import (
    BudgetKind,
    BudgetSpec,
    ComparatorKind,
    ExperimentConfig,
    PolicyKind,
    SetKind,
    SetSpec,
    StreamKind,
)
from adaregret.streams import (
    LossStream,
    ZeroPrefix,
    ZeroStream,
    best_segmented_comparator,
    brute_force_comparator,
    budgeted_comparator,
    gen_rademacher,
    gen_regression,
)


def build_set(spec: SetSpec) -> FeasibleSet:
    if spec.kind is SetKind.BOX:
        return Box(lower=np.array(spec.lower), upper=np.array(spec.upper))
    center = np.zeros(spec.resolved_dimension) if spec.center is None else np.array(spec.center)
    return Ball(center=center, radius=spec.radius)


def build_budget_fn(spec: BudgetSpec, diameter: float) -> PathBudgetFunction:
    if spec.kind is BudgetKind.CONSTANT:
        return ConstantBudget(spec.c, diameter)
    if spec.kind is BudgetKind.LINEAR:
        return LinearBudget(spec.c, diameter)
    return SqrtBudget(spec.c, diameter)


def initial_decision(config: ExperimentConfig, feasible_set: FeasibleSet) -> np.ndarray:
    """Configured w_1, or the center of the set."""
    if config.initial is not None:
        return np.array(config.initial)
    return feasible_set.linear_minimizer(np.zeros(feasible_set.dimension))


def build_stream(
    config: ExperimentConfig,
    feasible_set: FeasibleSet,
    seed: int,
) -> tuple[LossStream, ComparatorPath | None]:
    """The loss stream of one repetition and, for regression, its ground-truth path."""
    spec = config.stream
    n = config.dimension
    if spec.kind is StreamKind.ZERO:
        return ZeroStream(config.horizon, n), None

    zeros = spec.zero_prefix
    rounds = config.horizon - zeros
    truth = None
    if spec.kind is StreamKind.REGRESSION:
        stream, truth = gen_regression(rounds, n, spec.drift_rate, spec.noise, seed, feasible_set)
    else:
        direction = np.eye(n)[0] if spec.direction is None else np.array(spec.direction)
        direction = direction / np.linalg.norm(direction)
        stream = gen_rademacher(direction, spec.scale, rounds, seed)
    if zeros:
        stream = ZeroPrefix(zeros, stream)
        if truth is not None:
            padded = np.concatenate([np.repeat(truth.points[:1], zeros, axis=0), truth.points])
            truth = ComparatorPath.build(padded, truth.budget, feasible_set)
    return stream, truth


def comparator_budget(config: ExperimentConfig, truth: ComparatorPath | None, diameter: float) -> float:
    """
    P of the comparator class: explicit budget, ground-truth variation, P_hat,
    then 0; capped at D*(T-1), the longest possible path.
    """
    spec = config.comparator
    if spec.budget is None and spec.kind is ComparatorKind.GROUND_TRUTH and truth is not None:
        return truth.budget
    return min(config.stated_comparator_budget(), diameter * (config.horizon - 1))


def build_policy(
    config: ExperimentConfig,
    feasible_set: FeasibleSet,
    stream: LossStream,
    budget: float,
) -> RatePolicy:
    spec = config.policy
    D = feasible_set.diameter()
    p_hat = budget if spec.p_hat is None else spec.p_hat
    if spec.kind is PolicyKind.CONSTANT_ORACLE:
        total = spec.g_total if spec.g_total is not None else stream.energy_envelope()
        try:
            return ConstantOracle(D, p_hat, total)
        except OracleUndefinedError as e:
            raise UsageError([f"policy.g_total: {e}"]) from e
    if spec.kind is PolicyKind.PER_COORDINATE:
        widths = feasible_set.coordinate_diameters()
        coordinate_p_hat = (
            np.full(widths.size, p_hat) if spec.p_hat_coordinates is None else np.array(spec.p_hat_coordinates)
        )
        return PerCoordinate(widths, coordinate_p_hat)
    if spec.kind is PolicyKind.DOUBLING:
        return DoublingReset(D, build_budget_fn(spec.budget, D), reset_decision=spec.reset_decision)
    return Adaptive(D, p_hat)


def build_comparator(
    config: ExperimentConfig,
    gradients: np.ndarray,
    feasible_set: FeasibleSet,
    budget: float,
    truth: ComparatorPath | None,
) -> ComparatorPath:
    """Hindsight comparator for the observed gradients."""
    spec = config.comparator
    if spec.kind is ComparatorKind.GROUND_TRUTH:
        if truth is None:
            raise UsageError(["comparator.kind: ground_truth needs a regression stream"])
        return truth
    if spec.kind is ComparatorKind.BUDGETED:
        budget_fn = build_budget_fn(config.policy.budget, feasible_set.diameter())
        return budgeted_comparator(gradients, feasible_set, budget_fn)
    if spec.kind is ComparatorKind.BRUTE_FORCE:
        try:
            return brute_force_comparator(gradients, feasible_set, budget, spec.grid_resolution)
        except SizeLimitError as e:
            raise UsageError([f"comparator.grid_resolution: {e}"]) from e
    try:
        comparator = best_segmented_comparator(gradients, feasible_set, budget, segments=spec.segments)
    except InfeasibleBudgetError as e:
        raise UsageError([f"comparator.segments: {e}"]) from e
    return comparator.expand(feasible_set)
