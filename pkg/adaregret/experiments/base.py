"""Acceptance criterion interface and the context they run in."""

from abc import ABC, abstractmethod
from collections.abc import Callable
from dataclasses import dataclass, field

from adaregret.analysis import bounds
from adaregret.scheduler import GradientEnergy, RatePolicy, ScalarRatePolicy
from adaregret.schemas import CriterionResult, Fault, SuiteScale


class IncreasingRate(ScalarRatePolicy):
    """Fault: the wrapped rate multiplied by t, so eta_t grows."""

    kind = "increasing"

    def __init__(self, inner: ScalarRatePolicy) -> None:
        super().__init__(inner.diameter)
        self.inner = inner

    def rate(self, energy: GradientEnergy, t: int) -> float:
        return self.inner.rate(energy, t) * t


@dataclass
class SuiteContext:
    """Scale, seed and injected faults shared by every criterion."""

    scale: SuiteScale = SuiteScale.SMALL
    faults: frozenset[Fault] = field(default_factory=frozenset)
    seed: int = 0

    @property
    def full(self) -> bool:
        return self.scale is SuiteScale.FULL

    def pick(self, small, full):
        return full if self.full else small

    def wrap_policy(self, policy: RatePolicy) -> RatePolicy:
        if Fault.ETA_INCREASE in self.faults and isinstance(policy, ScalarRatePolicy):
            return IncreasingRate(policy)
        return policy

    @property
    def bound_adaptive(self) -> Callable[..., float]:
        if Fault.BOUND_HALVED in self.faults:
            return lambda *args: 0.5 * bounds.bound_adaptive(*args)
        return bounds.bound_adaptive


class BaseCriterion(ABC):
    """Abstract base for all acceptance criteria."""

    name: str = "base"
    description: str = ""

    @abstractmethod
    async def evaluate(self, context: SuiteContext) -> CriterionResult:
        """Run the check and report pass/fail with metrics."""

    def result(self, passed: bool, detail: str = "", **metrics: float) -> CriterionResult:
        return CriterionResult(
            name=self.name,
            description=self.description,
            passed=passed,
            detail=detail,
            metrics={k: float(v) for k, v in metrics.items()},
        )
