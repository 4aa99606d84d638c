"""Pydantic schemas for experiment configuration, reports and suite results."""

import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from adaregret.geometry.path import max_segments


class SetKind(str, Enum):
    """Shipped feasible sets."""

    BALL = "ball"
    BOX = "box"


class PolicyKind(str, Enum):
    """Learning-rate policies."""

    CONSTANT_ORACLE = "constant_oracle"
    ADAPTIVE = "adaptive"
    PER_COORDINATE = "per_coordinate"
    DOUBLING = "doubling"


class BudgetKind(str, Enum):
    """Shipped path budget functions P(T)."""

    CONSTANT = "constant"
    SQRT = "sqrt"
    LINEAR = "linear"


class StreamKind(str, Enum):
    """Loss stream generators."""

    RADEMACHER = "rademacher"
    REGRESSION = "regression"
    ZERO = "zero"


class ComparatorKind(str, Enum):
    """How the comparator sequence of a run is chosen."""

    BEST_SEGMENTED = "best_segmented"
    GROUND_TRUTH = "ground_truth"
    BUDGETED = "budgeted"
    BRUTE_FORCE = "brute_force"


class SuiteScale(str, Enum):
    """Verification suite sizes."""

    SMALL = "small"
    FULL = "full"


class Fault(str, Enum):
    """Deliberate defects injected to check that the suite detects them."""

    ETA_INCREASE = "eta_increase"
    BOUND_HALVED = "bound_halved"


class _Spec(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False, use_enum_values=False)


class SetSpec(_Spec):
    """Feasible set parameters."""

    kind: SetKind = SetKind.BALL
    dimension: int | None = Field(default=None, ge=1)
    center: list[float] | None = None
    radius: float = Field(default=1.0, gt=0.0)
    lower: list[float] | None = None
    upper: list[float] | None = None

    @model_validator(mode="after")
    def _check_shape(self) -> "SetSpec":
        if self.kind is SetKind.BOX:
            if self.lower is None or self.upper is None:
                raise ValueError("box needs both lower and upper")
            if len(self.lower) != len(self.upper):
                raise ValueError("lower and upper must have the same length")
            if any(lo > hi for lo, hi in zip(self.lower, self.upper)):
                raise ValueError("box needs lower <= upper in every coordinate")
            if all(lo == hi for lo, hi in zip(self.lower, self.upper)):
                raise ValueError("box needs at least one coordinate with positive width")
        elif self.center is None and self.dimension is None:
            self.dimension = 1
        if self.dimension is not None and self.dimension != self.resolved_dimension:
            raise ValueError("dimension disagrees with the given coordinates")
        return self

    @property
    def resolved_dimension(self) -> int:
        if self.kind is SetKind.BOX:
            return len(self.lower or [])
        if self.center is not None:
            return len(self.center)
        return self.dimension or 1

    @property
    def diameter(self) -> float:
        if self.kind is SetKind.BOX:
            return math.hypot(*(hi - lo for lo, hi in zip(self.lower or [], self.upper or [])))
        return 2.0 * self.radius


class BudgetSpec(_Spec):
    """Path budget function; ``c`` is P itself for the constant kind."""

    kind: BudgetKind = BudgetKind.SQRT
    c: float = Field(default=1.0, ge=0.0)


class PolicySpec(_Spec):
    """Rate policy; ``p_hat`` defaults to the comparator budget."""

    kind: PolicyKind = PolicyKind.ADAPTIVE
    p_hat: float | None = Field(default=None, ge=0.0)
    p_hat_coordinates: list[float] | None = None
    g_total: float | None = Field(default=None, gt=0.0)
    budget: BudgetSpec | None = None
    reset_decision: bool = False

    @model_validator(mode="after")
    def _check_budget(self) -> "PolicySpec":
        if self.kind is PolicyKind.DOUBLING and self.budget is None:
            self.budget = BudgetSpec()
        if self.p_hat_coordinates is not None and any(p < 0.0 for p in self.p_hat_coordinates):
            raise ValueError("p_hat_coordinates must be nonnegative")
        return self


class StreamSpec(_Spec):
    """Loss stream parameters."""

    kind: StreamKind = StreamKind.RADEMACHER
    direction: list[float] | None = None
    scale: float = Field(default=1.0, gt=0.0)
    drift_rate: float = Field(default=0.0, ge=0.0)
    noise: float = Field(default=0.0, ge=0.0)
    zero_prefix: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_direction(self) -> "StreamSpec":
        if self.direction is not None and not any(self.direction):
            raise ValueError("direction must be nonzero")
        return self


class ComparatorSpec(_Spec):
    """Comparator selection; ``budget`` defaults to P_hat, then to 0."""

    kind: ComparatorKind = ComparatorKind.BEST_SEGMENTED
    budget: float | None = Field(default=None, ge=0.0)
    segments: int | None = Field(default=None, ge=1)
    grid_resolution: int = Field(default=21, ge=2, le=21)


class ExperimentConfig(_Spec):
    """A complete experiment: set, policy, stream, comparator and run sizes."""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False, populate_by_name=True)

    feasible_set: SetSpec = Field(default_factory=SetSpec, alias="set")
    policy: PolicySpec = Field(default_factory=PolicySpec)
    stream: StreamSpec = Field(default_factory=StreamSpec)
    comparator: ComparatorSpec = Field(default_factory=ComparatorSpec)
    horizon: int = Field(default=1000, ge=1)
    repetitions: int = Field(default=1, ge=1)
    seed: int = Field(default=0, ge=0)
    initial: list[float] | None = None
    output: str | None = None
    trace_all: bool = False

    @model_validator(mode="after")
    def _check_consistency(self) -> "ExperimentConfig":
        n = self.dimension
        if self.stream.direction is not None and len(self.stream.direction) != n:
            raise ValueError(f"stream.direction must have {n} entries")
        if self.initial is not None and len(self.initial) != n:
            raise ValueError(f"initial must have {n} entries")
        if self.stream.zero_prefix >= self.horizon and self.stream.kind is not StreamKind.ZERO:
            raise ValueError("stream.zero_prefix must be smaller than horizon")
        if self.policy.kind is PolicyKind.PER_COORDINATE:
            if self.feasible_set.kind is not SetKind.BOX:
                raise ValueError("policy.kind=per_coordinate needs set.kind=box")
            if self.policy.p_hat_coordinates is not None and len(self.policy.p_hat_coordinates) != n:
                raise ValueError(f"policy.p_hat_coordinates must have {n} entries")
        if self.comparator.kind is ComparatorKind.GROUND_TRUTH and self.stream.kind is not StreamKind.REGRESSION:
            raise ValueError("comparator.kind=ground_truth needs stream.kind=regression")
        if self.comparator.kind is ComparatorKind.BUDGETED and self.policy.budget is None:
            raise ValueError("comparator.kind=budgeted needs policy.budget")
        if self.comparator.kind is ComparatorKind.BRUTE_FORCE and (self.horizon > 8 or n > 2):
            raise ValueError("comparator.kind=brute_force needs horizon <= 8 and dimension <= 2")
        segments = self.comparator.segments
        if self.comparator.kind is ComparatorKind.BEST_SEGMENTED and segments is not None:
            if segments > self.horizon:
                raise ValueError(f"comparator.segments={segments} exceeds horizon={self.horizon}")
            limit = max_segments(self.stated_comparator_budget(), self.feasible_set.diameter)
            if segments > limit:
                raise ValueError(f"comparator.segments={segments} exceeds floor(P/D) + 1 = {limit}")
        return self

    @property
    def dimension(self) -> int:
        return self.feasible_set.resolved_dimension

    def stated_comparator_budget(self) -> float:
        """comparator.budget, then policy.p_hat, then 0; capped at D*(T-1)."""
        if self.comparator.budget is not None:
            budget = self.comparator.budget
        elif self.policy.p_hat is not None:
            budget = self.policy.p_hat
        else:
            budget = 0.0
        return min(budget, self.feasible_set.diameter * (self.horizon - 1))


class RegretReport(BaseModel):
    """Realized and linearized dynamic regret of one run with every applicable bound."""

    realized_dynamic_regret: float | None = None
    linearized_regret: float
    total_energy: float = Field(description="G_T")
    max_grad_norm: float = Field(description="L")
    path_variation: float
    linearized_only: bool = False
    bounds: dict[str, float] = Field(default_factory=dict)
    lower_bounds: dict[str, float] = Field(default_factory=dict)
    violations: list[str] = Field(default_factory=list)

    @property
    def violated(self) -> bool:
        return bool(self.violations)


class ExperimentResult(BaseModel):
    """Outcome of ``run_experiment``."""

    exit_status: int
    repetitions: int
    violation_count: int
    artifacts: dict[str, str] = Field(default_factory=dict)
    reports: list[RegretReport] = Field(default_factory=list)


class CriterionResult(BaseModel):
    """One acceptance criterion of the verification suite."""

    name: str
    description: str
    passed: bool
    detail: str = ""
    metrics: dict[str, float] = Field(default_factory=dict)
    error: str | None = None


class SuiteReport(BaseModel):
    """Machine-readable verification summary."""

    scale: SuiteScale
    faults: list[Fault] = Field(default_factory=list)
    passed: bool
    criteria: list[CriterionResult] = Field(default_factory=list)
