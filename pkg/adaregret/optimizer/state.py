"""Optimizer state and per-round step records."""

from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from adaregret.geometry.base import FeasibleSet
from adaregret.scheduler.energy import GradientEnergy


class StepKind(str, Enum):
    """How a round was processed."""

    SKIPPED = "skipped"  # zero-gradient prefix
    ZERO_STEP = "zero_step"  # zero gradient after the prefix
    DESCENT = "descent"


@dataclass(frozen=True, eq=False)
class OptimizerState:
    """
    Engine state before round ``round`` is played.

    ``anchor`` is the decision at the start of the current restart segment
    (w_1 unless a doubling policy restarted); while ``zero_prefix`` holds the
    decision equals the anchor.
    """

    feasible_set: FeasibleSet
    decision: np.ndarray
    energy: GradientEnergy
    initial: np.ndarray
    anchor: np.ndarray
    round: int = 1
    zero_prefix: bool = True
    segment: int = 1
    notes: tuple[str, ...] = field(default_factory=tuple)

    def advance(self, **changes) -> "OptimizerState":
        return replace(self, round=self.round + 1, **changes)


@dataclass(frozen=True, eq=False)
class StepRecord:
    """Trace of one round: w_t, g_t, eta_t and the post-step decision w_{t+1}."""

    round: int
    decision: np.ndarray
    gradient: np.ndarray
    rate: float | np.ndarray | None
    next_decision: np.ndarray
    energy: float
    segment: int
    kind: StepKind
    dormant: np.ndarray | None = None

    @property
    def skipped(self) -> bool:
        return self.kind is StepKind.SKIPPED
