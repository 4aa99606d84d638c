"""Experiment configuration, orchestration and the verification suite."""

from adaregret.experiments.base import BaseCriterion, IncreasingRate, SuiteContext
from adaregret.experiments.loader import build_config, load_config, parse_config_text
from adaregret.experiments.lower_bound import LowerBoundStudy, lower_bound_study
from adaregret.experiments.orchestrator import (
    RepetitionOutcome,
    run_experiment,
    run_repetition,
    run_repetitions,
)
from adaregret.experiments.suite import verify_suite
from adaregret.experiments.trace_study import TraceInstance, trace_study

__all__ = [
    "BaseCriterion",
    "IncreasingRate",
    "LowerBoundStudy",
    "RepetitionOutcome",
    "SuiteContext",
    "TraceInstance",
    "build_config",
    "load_config",
    "lower_bound_study",
    "parse_config_text",
    "run_experiment",
    "run_repetition",
    "run_repetitions",
    "trace_study",
    "verify_suite",
]
