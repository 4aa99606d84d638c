"""Acceptance criteria of the verification suite."""

import asyncio
import logging
import math
import tempfile
from abc import abstractmethod
from pathlib import Path

import numpy as np

from adaregret.analysis import (
    GramAccumulator,
    bound_constant,
    bound_per_coordinate,
    dynamic_regret,
    evaluate_bounds,
    exceeds,
    lower_bound_per_coordinate,
    lower_bound_sum,
    minimax_gap,
    per_coordinate_improvement,
    trace_inequality,
)
from adaregret.errors import MultiQueryError
from adaregret.experiments.base import BaseCriterion, SuiteContext
from adaregret.experiments.factory import build_budget_fn
from adaregret.experiments.lower_bound import lower_bound_study
from adaregret.experiments.orchestrator import RepetitionOutcome, run_experiment, run_repetition
from adaregret.experiments.trace_study import trace_study
from adaregret.geometry import Ball, Box, ComparatorPath, FeasibleSet
from adaregret.optimizer import run
from adaregret.scheduler import Adaptive, ConstantOracle
from adaregret.schemas import CriterionResult, ExperimentConfig
from adaregret.streams import (
    LinearFixed,
    StreamSession,
    brute_force_comparator,
    gen_regression,
    grid_points,
    philox,
)

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)


class ThreadedCriterion(BaseCriterion):
    """Criterion whose CPU-bound check runs on a worker thread."""

    async def evaluate(self, context: SuiteContext) -> CriterionResult:
        return await asyncio.to_thread(self.check, context)

    @abstractmethod
    def check(self, context: SuiteContext) -> CriterionResult:
        """Blocking body of the criterion."""


def _unit(rng: np.random.Generator, n: int) -> list[float]:
    v = rng.standard_normal(n)
    return list(v / np.linalg.norm(v))


def _set_spec(kind: str, n: int) -> dict:
    if kind == "box":
        return {"kind": "box", "lower": [-1.0] * n, "upper": [1.0] * n}
    return {"kind": "ball", "dimension": n, "radius": 1.0}


def _diameter(kind: str, n: int) -> float:
    return 2.0 * math.sqrt(n) if kind == "box" else 2.0


def soundness_configs(context: SuiteContext, policy: dict) -> list[ExperimentConfig]:
    """
    N in {1, 2, 8} x {ball, box} x {rademacher, regression, zero-prefix
    rademacher} x best-segmented P in {0, D, 5D}, plus ground-truth drift
    paths on the regression streams.
    """
    rng = philox(context.seed)
    horizon = context.pick(200, 1000)
    repetitions = context.pick(1, 4)
    configs = []
    seed = context.seed
    for n in (1, 2, 8):
        for set_kind in ("ball", "box"):
            D = _diameter(set_kind, n)
            streams = [
                {"kind": "rademacher", "direction": _unit(rng, n), "scale": float(rng.choice([0.5, 1.0, 3.0]))},
                {"kind": "regression", "drift_rate": 0.01, "noise": 0.1},
                {"kind": "rademacher", "direction": _unit(rng, n), "zero_prefix": horizon // 10},
            ]
            comparators = [{"kind": "best_segmented", "budget": k * D} for k in (0, 1, 5)]
            for stream in streams:
                kinds = comparators + ([{"kind": "ground_truth"}] if stream["kind"] == "regression" else [])
                for comparator in kinds:
                    configs.append(
                        ExperimentConfig.model_validate({
                            "set": _set_spec(set_kind, n),
                            "policy": policy,
                            "stream": stream,
                            "comparator": comparator,
                            "horizon": horizon,
                            "repetitions": repetitions,
                            "seed": seed,
                        })
                    )
                    seed += repetitions
    return configs


def _outcomes(context: SuiteContext, configs: list[ExperimentConfig]) -> list[RepetitionOutcome]:
    return [
        run_repetition(config, r, context.wrap_policy)
        for config in configs
        for r in range(config.repetitions)
    ]


class AdaptiveSoundness(ThreadedCriterion):
    name = "adaptive_bound_soundness"
    description = "linearized regret <= bound_adaptive(D, P, P, G_T) over seeded runs"

    def check(self, context: SuiteContext) -> CriterionResult:
        outcomes = _outcomes(context, soundness_configs(context, {"kind": "adaptive"}))
        failures = []
        worst = 0.0
        for o in outcomes:
            D = o.feasible_set.diameter()
            P = o.comparator.budget
            bound = context.bound_adaptive(D, P, P, o.report.total_energy)
            if bound > 0.0:
                worst = max(worst, o.report.linearized_regret / bound)
            if exceeds(o.report.linearized_regret, bound) or o.report.violations:
                failures.append(f"seed {o.seed}: {o.report.violations or 'bound_adaptive exceeded'}")
        return self.result(
            not failures, "; ".join(failures[:5]), runs=len(outcomes), violations=len(failures), worst_ratio=worst
        )


class ConstantOracleSoundness(ThreadedCriterion):
    name = "constant_oracle_bound_soundness"
    description = "linearized regret <= D sqrt(1 + 2P/D) G_T with the oracle rate"

    def check(self, context: SuiteContext) -> CriterionResult:
        outcomes = _outcomes(context, soundness_configs(context, {"kind": "constant_oracle"}))
        failures = []
        for o in outcomes:
            policy = o.policy
            D = o.feasible_set.diameter()
            if isinstance(policy, ConstantOracle):
                bound = bound_constant(D, policy.budget, policy.total_energy)
                if exceeds(o.report.linearized_regret, bound):
                    failures.append(f"seed {o.seed}: regret {o.report.linearized_regret:.6g} > {bound:.6g}")
            if o.report.violations:
                failures.append(f"seed {o.seed}: {o.report.violations}")
        return self.result(not failures, "; ".join(failures[:5]), runs=len(outcomes), violations=len(failures))


class RedundancyIdentity(ThreadedCriterion):
    name = "sqrt2_redundancy_identity"
    description = "bound_adaptive(D, P, P, G_T) = sqrt(2) * bound_constant(D, P, G_T) on a 100-point grid"

    def check(self, context: SuiteContext) -> CriterionResult:
        worst = 0.0
        failures = []
        largest_gap = 0.0
        for D in (0.5, 1.0, 2.0, 5.0, 10.0):
            for ratio in (0.0, 0.3, 1.0, 2.5, 7.0):
                P = ratio * D
                for G in (0.1, 1.0, 10.0, 1000.0):
                    adaptive = context.bound_adaptive(D, P, P, G)
                    constant = bound_constant(D, P, G)
                    error = abs(adaptive - SQRT2 * constant) / adaptive
                    worst = max(worst, error)
                    if error > 1e-12 or constant > adaptive * (1.0 + 1e-12):
                        failures.append(f"D={D}, P={P}, G={G}: {adaptive!r} vs sqrt2*{constant!r}")
                    mismatched = [context.bound_adaptive(D, P, q * D, G) for q in (0.0, 0.1, 0.5, 2.0, 8.0)]
                    if min(mismatched) < adaptive * (1.0 - 1e-12):
                        failures.append(f"D={D}, P={P}, G={G}: mismatched P_hat beats P_hat = P")
                    gap = adaptive / lower_bound_sum(D, P, G)
                    largest_gap = max(largest_gap, gap)
                    if abs(gap - minimax_gap(D, P)) > 1e-9 * gap or gap > 4.0 * math.sqrt(3.0) + 1e-12:
                        failures.append(f"D={D}, P={P}: minimax gap {gap:.6g}")
        return self.result(not failures, "; ".join(failures[:5]), worst_relative_error=worst, largest_gap=largest_gap)


def _random_set(rng: np.random.Generator, n: int, index: int) -> FeasibleSet:
    center = rng.uniform(-1.0, 1.0, n)
    if index % 2 == 0:
        return Ball(center=center, radius=float(rng.uniform(0.5, 2.0)))
    half = rng.uniform(0.25, 1.5, n)
    return Box(lower=center - half, upper=center + half)


def _report(records, comparator: ComparatorPath, stream, feasible_set, policy):
    report = dynamic_regret(records, comparator, stream)
    return evaluate_bounds(report, records, comparator, feasible_set, policy)


class StaticSpecialization(ThreadedCriterion):
    name = "static_regret_specialization"
    description = "with P = 0 the bound is sqrt(2) D G_T and dominates regret against the best fixed grid point"

    def check(self, context: SuiteContext) -> CriterionResult:
        rng = philox(context.seed + 4)
        failures = []
        instances = context.pick(20, 50)
        for i in range(instances):
            feasible_set = _random_set(rng, 1, i)
            gradients = rng.standard_normal((8, 1)) * rng.uniform(0.1, 5.0)
            stream = LinearFixed(gradients)
            D = feasible_set.diameter()
            policy = context.wrap_policy(Adaptive(D, 0.0))
            records = run(stream, feasible_set, feasible_set.sample(rng, 1)[0], policy, 8)
            points, _ = grid_points(feasible_set, 21)
            best = points[int(np.argmin(points @ gradients.sum(axis=0)))]
            report = _report(records, ComparatorPath.fixed(best, 8, feasible_set), stream, feasible_set, policy)
            bound = context.bound_adaptive(D, 0.0, 0.0, report.total_energy)
            if abs(bound - SQRT2 * D * report.total_energy) > 1e-12 * max(bound, 1.0):
                failures.append(f"instance {i}: bound {bound!r} != sqrt(2) D G_T")
            if exceeds(report.linearized_regret, bound) or report.violations:
                failures.append(f"instance {i}: regret {report.linearized_regret:.6g} > {bound:.6g}")
            searched = brute_force_comparator(gradients, feasible_set, 0.0, 21)
            if float(np.sum(gradients * searched.points)) > float(np.sum(gradients @ best)) + 1e-12:
                failures.append(f"instance {i}: brute force misses the best fixed grid point")
        return self.result(not failures, "; ".join(failures[:5]), instances=instances, violations=len(failures))


class BruteForceDominance(ThreadedCriterion):
    name = "brute_force_dominance"
    description = "bound_adaptive dominates regret against the worst in-class grid comparator"

    def check(self, context: SuiteContext) -> CriterionResult:
        rng = philox(context.seed + 5)
        failures = []
        instances = context.pick(16, 50)
        for i in range(instances):
            n = 1 + i % 2
            horizon, resolution = 8, 21
            feasible_set = _random_set(rng, n, i // 2)
            D = feasible_set.diameter()
            P = (0.0, 0.5, 1.0, 2.5)[(i // 2) % 4] * D
            gradients = rng.standard_normal((horizon, n))
            stream = LinearFixed(gradients)
            policy = context.wrap_policy(Adaptive(D, P))
            records = run(stream, feasible_set, feasible_set.sample(rng, 1)[0], policy, horizon)
            comparator = brute_force_comparator(gradients, feasible_set, P, resolution)
            report = _report(records, comparator, stream, feasible_set, policy)
            bound = context.bound_adaptive(D, comparator.budget, P, report.total_energy)
            if exceeds(report.linearized_regret, bound) or report.violations:
                failures.append(f"instance {i}: regret {report.linearized_regret:.6g} > {bound:.6g}")
        return self.result(not failures, "; ".join(failures[:5]), instances=instances, violations=len(failures))


class TraceInequalityCheck(ThreadedCriterion):
    name = "trace_inequality"
    description = "sqrt(sum ||g_t||^2) <= tr(sqrt(A_T)) <= sqrt(N) sqrt(sum ||g_t||^2)"

    def check(self, context: SuiteContext) -> CriterionResult:
        failures = []
        instances = trace_study(context.pick(100, 500), context.seed)
        for item in instances:
            if not 1.0 - 1e-10 <= item.ratio <= math.sqrt(item.dimension) + 1e-10:
                failures.append(f"instance {item.instance}: ratio {item.ratio!r}")

        rng = philox(context.seed + 6)
        for n in (2, 4, 8, 16):
            direction = np.array(_unit(rng, n))
            scales = rng.standard_normal((int(rng.integers(1, 101)), 1))
            rank_one = trace_inequality(GramAccumulator.from_gradients(scales * direction))
            if abs(rank_one.ratio - 1.0) > 1e-8:
                failures.append(f"rank-1 N={n}: ratio {rank_one.ratio!r}")
            isotropic = trace_inequality(GramAccumulator.from_gradients(np.tile(3.0 * np.eye(n), (2, 1))))
            if abs(isotropic.ratio - math.sqrt(n)) > 1e-6:
                failures.append(f"isotropic N={n}: ratio {isotropic.ratio!r}")
        return self.result(not failures, "; ".join(failures[:5]), instances=len(instances) + 8)


class DoublingSoundness(ThreadedCriterion):
    name = "doubling_trick_soundness"
    description = "both doubling bounds dominate regret against comparators within P(t) on every prefix"

    def check(self, context: SuiteContext) -> CriterionResult:
        rng = philox(context.seed + 7)
        runs = context.pick(10, 50)
        horizon = context.pick(255, 1023)
        failures = []
        for i in range(runs):
            n = 1 + i % 2
            D = 2.0
            config = ExperimentConfig.model_validate({
                "set": {"kind": "ball", "dimension": n},
                "policy": {
                    "kind": "doubling",
                    "budget": {"kind": "sqrt", "c": (0.1, 1.0)[i % 2] * D},
                    "reset_decision": bool(i % 3 == 0),
                },
                "stream": {"kind": "rademacher", "direction": _unit(rng, n), "scale": float(rng.uniform(0.5, 2.0))},
                "comparator": {"kind": "budgeted"},
                "horizon": horizon,
                "seed": context.seed + 700 + i,
            })
            outcome = run_repetition(config, 0, context.wrap_policy)
            report = outcome.report
            slack = 1e-9 * D
            budget_fn = build_budget_fn(config.policy.budget, D)
            if not outcome.comparator.respects(budget_fn, slack):
                failures.append(f"run {i}: comparator leaves the budget on a prefix")
            for name in ("doubling_sum", "doubling_max"):
                bound = report.bounds.get(name)
                if bound is None or exceeds(report.linearized_regret, bound):
                    failures.append(f"run {i}: {name} = {bound} against regret {report.linearized_regret:.6g}")
            if report.violations:
                failures.append(f"run {i}: {report.violations}")
        return self.result(not failures, "; ".join(failures[:5]), runs=runs, violations=len(failures))


class LowerBoundMonteCarlo(ThreadedCriterion):
    name = "lower_bound_monte_carlo"
    description = "adaptive regret on Rademacher streams is at least half of D G_T / (2 sqrt 2) on average"

    def check(self, context: SuiteContext) -> CriterionResult:
        config = ExperimentConfig.model_validate({
            "set": {"kind": "ball", "dimension": 1, "radius": 1.0},
            "policy": {"kind": "adaptive", "p_hat": 0.0},
            "stream": {"kind": "rademacher", "scale": 1.0},
            "horizon": context.pick(1024, 4096),
            "repetitions": context.pick(200, 2000),
            "seed": context.seed + 8,
        })
        study = lower_bound_study(config)
        threshold = 0.5 * float(np.mean(study.lower_sum))
        upper = np.array([context.bound_adaptive(study.diameter, 0.0, 0.0, g) for g in study.total_energy])
        above = int(np.sum([exceeds(r, u) for r, u in zip(study.regret, upper)]))
        passed = study.mean_regret >= threshold and above == 0
        detail = f"mean regret {study.mean_regret:.6g} vs threshold {threshold:.6g}; {above} runs above the upper bound"
        return self.result(passed, detail, mean_regret=study.mean_regret, threshold=threshold, above_upper=above)


class PerCoordinateImprovement(ThreadedCriterion):
    name = "per_coordinate_improvement"
    description = "coordinate widths D_i never lose to D_inf, and per-coordinate runs respect their bound"

    def check(self, context: SuiteContext) -> CriterionResult:
        rng = philox(context.seed + 9)
        lower, upper = [-5.0, -0.05], [5.0, 0.05]
        widths = np.array(upper) - np.array(lower)
        failures = []
        for i in range(context.pick(30, 100)):
            G_i = np.sqrt(np.sum(rng.standard_normal((int(rng.integers(1, 200)), 2)) ** 2, axis=0))
            P_i = rng.uniform(0.0, 3.0, 2) * widths
            comparison = per_coordinate_improvement(widths, P_i, G_i)
            if comparison.coordinate_form > comparison.uniform_form * (1.0 + 1e-12):
                failures.append(f"set {i}: {comparison.coordinate_form:.6g} > {comparison.uniform_form:.6g}")
            if lower_bound_per_coordinate(widths, P_i, G_i) > bound_per_coordinate(widths, P_i, G_i):
                failures.append(f"set {i}: lower bound above upper bound")

        runs = context.pick(6, 20)
        for i in range(runs):
            stream = (
                {"kind": "rademacher", "direction": _unit(rng, 2)}
                if i % 2 == 0
                else {"kind": "regression", "drift_rate": 0.005, "noise": 0.05}
            )
            config = ExperimentConfig.model_validate({
                "set": {"kind": "box", "lower": lower, "upper": upper},
                "policy": {"kind": "per_coordinate"},
                "stream": stream,
                "comparator": {"kind": "best_segmented", "budget": (0.0, 10.5, 31.0)[i % 3]},
                "horizon": context.pick(200, 500),
                "seed": context.seed + 900 + i,
            })
            report = run_repetition(config, 0, context.wrap_policy).report
            if report.violations or "per_coordinate" not in report.bounds:
                failures.append(f"run {i}: {report.violations}")
        return self.result(not failures, "; ".join(failures[:5]), runs=runs, violations=len(failures))


class DeterminismAndCausality(BaseCriterion):
    name = "determinism_and_causality"
    description = "byte-identical CSV for a repeated seed; prefix replays reproduce decisions"

    async def evaluate(self, context: SuiteContext) -> CriterionResult:
        config = ExperimentConfig.model_validate({
            "set": {"kind": "ball", "dimension": 2},
            "stream": {"kind": "rademacher", "direction": [0.6, 0.8]},
            "comparator": {"kind": "best_segmented", "budget": 2.0},
            "horizon": 200,
            "repetitions": 3,
            "seed": context.seed + 10,
        })
        failures = []
        with tempfile.TemporaryDirectory() as first, tempfile.TemporaryDirectory() as second:
            await run_experiment(config, first)
            await run_experiment(config, second)
            for name in ("trace.csv", "summary.csv", "signs.csv"):
                if (Path(first) / name).read_bytes() != (Path(second) / name).read_bytes():
                    failures.append(f"{name} differs between identical runs")
        failures.extend(await asyncio.to_thread(self._replay, context))
        return self.result(not failures, "; ".join(failures[:5]))

    @staticmethod
    def _replay(context: SuiteContext) -> list[str]:
        rng = philox(context.seed + 11)
        failures = []
        for i in range(context.pick(8, 20)):
            n = int(rng.integers(1, 4))
            horizon = 60
            feasible_set = Ball.centered(n)
            seed = context.seed + 1100 + i
            stream, _ = gen_regression(horizon, n, 0.02, 0.1, seed, feasible_set)
            policy = Adaptive(feasible_set.diameter(), 1.0)
            full = run(stream, feasible_set, np.zeros(n), policy, horizon)
            cut = int(rng.integers(1, horizon))
            replay_stream, _ = gen_regression(horizon, n, 0.02, 0.1, seed, feasible_set)
            prefix = run(replay_stream, feasible_set, np.zeros(n), policy, cut)
            if any(not np.array_equal(a.decision, b.decision) for a, b in zip(full, prefix)):
                failures.append(f"replay {i}: decisions differ within the first {cut} rounds")
            session = StreamSession(replay_stream)
            session.subgradient(1, np.zeros(n))
            try:
                session.subgradient(1, np.zeros(n))
                failures.append(f"replay {i}: a round was observed twice")
            except MultiQueryError:
                pass
        return failures


CRITERIA: tuple[type[BaseCriterion], ...] = (
    AdaptiveSoundness,
    ConstantOracleSoundness,
    RedundancyIdentity,
    StaticSpecialization,
    BruteForceDominance,
    TraceInequalityCheck,
    DoublingSoundness,
    LowerBoundMonteCarlo,
    PerCoordinateImprovement,
    DeterminismAndCausality,
)
