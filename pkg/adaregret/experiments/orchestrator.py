"""Experiment orchestration - repetitions, regret reports and CSV artifacts."""

import asyncio
import logging
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from adaregret.analysis import diagnostics, dynamic_regret, evaluate_bounds
from adaregret.config import get_settings
from adaregret.experiments.factory import (
    build_comparator,
    build_policy,
    build_set,
    build_stream,
    comparator_budget,
    initial_decision,
)
from adaregret.geometry import ComparatorPath, FeasibleSet
from adaregret.optimizer import StepRecord, run
from adaregret.scheduler import RatePolicy
from adaregret.schemas import ExperimentConfig, ExperimentResult, RegretReport
from adaregret.storage import ArtifactStore, format_vector
from adaregret.streams import LinearRademacher, LossStream, ZeroPrefix

logger = logging.getLogger(__name__)

PolicyWrapper = Callable[[RatePolicy], RatePolicy]

TRACE_COLUMNS = ("t", "w", "grad_norm", "eta", "G_t", "segment_k", "D_t", "P_t")
SUMMARY_COLUMNS = (
    "repetition",
    "seed",
    "realized_regret",
    "linearized_regret",
    "G_T",
    "L",
    "path_variation",
    "bound_realized_rates",
    "bound_constant",
    "bound_adaptive",
    "bound_per_coordinate",
    "bound_doubling_sum",
    "bound_doubling_max",
    "bound_doubling_segmented",
    "lower_bound_sum",
    "lower_bound_max",
    "violation",
)
_BOUND_KEYS = (
    "realized_rates",
    "constant",
    "adaptive",
    "per_coordinate",
    "doubling_sum",
    "doubling_max",
    "doubling_segmented",
)


@dataclass(frozen=True, eq=False)
class RepetitionOutcome:
    """Everything one repetition produced."""

    repetition: int
    seed: int
    feasible_set: FeasibleSet
    stream: LossStream
    policy: RatePolicy
    records: list[StepRecord]
    comparator: ComparatorPath
    report: RegretReport

    @property
    def signs(self) -> np.ndarray | None:
        stream = self.stream.inner if isinstance(self.stream, ZeroPrefix) else self.stream
        return stream.signs if isinstance(stream, LinearRademacher) else None


def run_repetition(
    config: ExperimentConfig,
    repetition: int = 0,
    wrap_policy: PolicyWrapper | None = None,
) -> RepetitionOutcome:
    """
    Play repetition r with seed ``config.seed + r`` and account its regret.

    The comparator is chosen in hindsight from the observed gradients.
    """
    seed = config.seed + repetition
    feasible_set = build_set(config.feasible_set)
    stream, truth = build_stream(config, feasible_set, seed)
    budget = comparator_budget(config, truth, feasible_set.diameter())
    policy = build_policy(config, feasible_set, stream, budget)
    if wrap_policy is not None:
        policy = wrap_policy(policy)
    records = run(stream, feasible_set, initial_decision(config, feasible_set), policy, config.horizon)
    gradients = np.stack([r.gradient for r in records])
    comparator = build_comparator(config, gradients, feasible_set, budget, truth)
    report = dynamic_regret(records, comparator, stream)
    report = evaluate_bounds(report, records, comparator, feasible_set, policy)
    logger.debug(
        "Repetition %d: regret %.6g, G_T %.6g, %d violations",
        repetition,
        report.linearized_regret,
        report.total_energy,
        len(report.violations),
    )
    return RepetitionOutcome(
        repetition=repetition,
        seed=seed,
        feasible_set=feasible_set,
        stream=stream,
        policy=policy,
        records=records,
        comparator=comparator,
        report=report,
    )


async def run_repetitions(
    config: ExperimentConfig,
    wrap_policy: PolicyWrapper | None = None,
) -> list[RepetitionOutcome]:
    """All repetitions on worker threads; results come back in repetition order."""
    semaphore = asyncio.Semaphore(get_settings().max_workers)

    async def _one(repetition: int) -> RepetitionOutcome:
        async with semaphore:
            return await asyncio.to_thread(run_repetition, config, repetition, wrap_policy)

    return list(await asyncio.gather(*(_one(r) for r in range(config.repetitions))))


def trace_rows(outcome: RepetitionOutcome) -> list[list]:
    distance, moves = diagnostics(outcome.records, outcome.comparator)
    rows = []
    for record, d_t, p_t in zip(outcome.records, distance, moves):
        if record.rate is None:
            eta = None
        elif np.ndim(record.rate) == 0:
            eta = float(record.rate)
        else:
            eta = format_vector(record.rate)
        rows.append([
            record.round,
            format_vector(record.decision),
            float(np.linalg.norm(record.gradient)),
            eta,
            record.energy,
            record.segment,
            float(d_t),
            float(p_t),
        ])
    return rows


def summary_row(outcome: RepetitionOutcome) -> list:
    report = outcome.report
    return [
        outcome.repetition,
        outcome.seed,
        report.realized_dynamic_regret,
        report.linearized_regret,
        report.total_energy,
        report.max_grad_norm,
        report.path_variation,
        *(report.bounds.get(key) for key in _BOUND_KEYS),
        report.lower_bounds.get("sum"),
        report.lower_bounds.get("max"),
        report.violated,
    ]


async def run_experiment(config: ExperimentConfig, out: str | Path | None = None) -> ExperimentResult:
    """
    Execute every repetition and write ``trace.csv`` (repetition 0, or all
    of them with ``trace_all``), ``summary.csv`` and, for Rademacher
    streams, ``signs.csv``.

    Exit status is 1 when any repetition violates a guaranteed bound.
    """
    store = ArtifactStore(out or config.output)
    logger.info(
        "Running %s policy on %s stream: T=%d, R=%d, seed=%d",
        config.policy.kind.value,
        config.stream.kind.value,
        config.horizon,
        config.repetitions,
        config.seed,
    )
    outcomes = await run_repetitions(config)

    if config.trace_all:
        trace = await store.write_csv(
            "trace.csv",
            ("repetition", *TRACE_COLUMNS),
            [[o.repetition, *row] for o in outcomes for row in trace_rows(o)],
        )
    else:
        trace = await store.write_csv("trace.csv", TRACE_COLUMNS, trace_rows(outcomes[0]))
    artifacts = {
        "trace": trace,
        "summary": await store.write_csv("summary.csv", SUMMARY_COLUMNS, [summary_row(o) for o in outcomes]),
    }
    if outcomes[0].signs is not None:
        sign_rows = [
            [o.repetition, t, int(sign)] for o in outcomes for t, sign in enumerate(o.signs, start=1)
        ]
        artifacts["signs"] = await store.write_csv("signs.csv", ("repetition", "t", "sign"), sign_rows)

    violations = sum(o.report.violated for o in outcomes)
    if violations:
        logger.warning("%d of %d repetitions violate a bound", violations, len(outcomes))
    logger.info("Finished %d repetitions", len(outcomes))
    return ExperimentResult(
        exit_status=1 if violations else 0,
        repetitions=len(outcomes),
        violation_count=violations,
        artifacts=artifacts,
        reports=[o.report for o in outcomes],
    )
