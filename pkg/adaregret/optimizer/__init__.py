"""Projected online sub-gradient descent engine."""

from adaregret.optimizer.engine import init, step, step_per_coordinate
from adaregret.optimizer.runner import BatchResult, run, run_batch
from adaregret.optimizer.state import OptimizerState, StepKind, StepRecord
from adaregret.optimizer.trace import Trace

__all__ = [
    "BatchResult",
    "OptimizerState",
    "StepKind",
    "StepRecord",
    "Trace",
    "init",
    "run",
    "run_batch",
    "step",
    "step_per_coordinate",
]
