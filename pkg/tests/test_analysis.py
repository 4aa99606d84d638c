"""Bound calculators and regret accounting."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from adaregret.analysis import (
    bound_adaptive,
    bound_constant,
    bound_diagonal_adagrad,
    bound_per_coordinate,
    bound_realized_rates,
    bounds_doubling,
    diagnostics,
    dynamic_regret,
    evaluate_bounds,
    exceeds,
    lower_bound_max,
    lower_bound_per_coordinate,
    lower_bound_sum,
    minimax_gap,
    per_coordinate_improvement,
)
from adaregret.errors import InvalidInputError, PreconditionViolationError
from adaregret.experiments import IncreasingRate
from adaregret.geometry import Box, ComparatorPath, path_variation
from adaregret.optimizer import run
from adaregret.scheduler import Adaptive, ConstantBudget, ConstantOracle, DoublingReset, PerCoordinate, SqrtBudget
from adaregret.streams import (
    AbsoluteRegression,
    LinearFixed,
    best_segmented_comparator,
    budgeted_comparator,
    gen_rademacher,
    max_segments,
)

diameters = st.floats(1e-2, 1e2)
budgets = st.floats(0.0, 1e3)
energies = st.floats(0.0, 1e4)


class TestUpperBounds:
    def test_realized_rates_constant_rate(self):
        assert bound_realized_rates(1.0, 0.0, [0.5] * 4, [1.0] * 4) == pytest.approx(2.0)

    def test_realized_rates_without_gradients(self):
        assert bound_realized_rates(1.0, 0.0, [0.5] * 3, [0.0] * 3) == pytest.approx(1.0)
        assert bound_realized_rates(1.0, 0.0, [float("nan")] * 3, [0.0] * 3) == 0.0

    def test_realized_rates_skips_prefix(self):
        rates = [float("nan"), float("nan"), 0.5, 0.5]
        assert bound_realized_rates(1.0, 0.0, rates, [0.0, 0.0, 1.0, 1.0]) == pytest.approx(1.5)

    def test_realized_rates_increasing_rate(self):
        with pytest.raises(PreconditionViolationError, match="round 3"):
            bound_realized_rates(1.0, 0.0, [0.5, 0.5, 0.6], [1.0] * 3)

    def test_realized_rates_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            bound_realized_rates(1.0, 0.0, [0.5] * 2, [1.0] * 3)

    @pytest.mark.parametrize("D, P, G, expected", [(1.0, 0.0, 10.0, 10.0), (1.0, 4.0, 3.0, 9.0), (2.0, 1.0, 0.0, 0.0)])
    def test_constant(self, D, P, G, expected):
        assert bound_constant(D, P, G) == pytest.approx(expected)

    @pytest.mark.parametrize("P, G, expected", [(0.0, 10.0, 14.142135623730951), (4.0, 1.0, 4.242640687119285)])
    def test_adaptive(self, P, G, expected):
        assert bound_adaptive(1.0, P, P, G) == pytest.approx(expected, rel=1e-12)

    @given(D=diameters, P=budgets, G=energies)
    def test_matched_estimate_is_general_form(self, D, P, G):
        tuned = math.sqrt(P / D + 0.5)
        general = ((P / D + 0.5) / tuned + tuned) * D * G
        assert bound_adaptive(D, P, P, G) == pytest.approx(general, rel=1e-12, abs=1e-300)

    @given(D=diameters, P=budgets, G=energies)
    def test_sqrt2_redundancy(self, D, P, G):
        adaptive = bound_adaptive(D, P, P, G)
        constant = bound_constant(D, P, G)
        assert adaptive == pytest.approx(math.sqrt(2.0) * constant, rel=1e-12, abs=1e-300)
        assert constant <= adaptive * (1.0 + 1e-12)

    @given(D=diameters, P=budgets, p_hat=budgets, G=st.floats(1e-3, 1e4))
    def test_mismatch_minimized_at_true_budget(self, D, P, p_hat, G):
        assert bound_adaptive(D, P, P, G) <= bound_adaptive(D, P, p_hat, G) * (1.0 + 1e-12)

    def test_per_coordinate(self):
        single = bound_adaptive(2.0, 1.0, 1.0, 3.0)
        assert bound_per_coordinate([2.0], [1.0], [3.0]) == pytest.approx(single)
        assert bound_per_coordinate([2.0, 2.0], [1.0, 1.0], [3.0, 3.0]) == pytest.approx(2.0 * single)
        assert bound_per_coordinate([0.0, 2.0], [0.0, 1.0], [9.0, 3.0]) == pytest.approx(single)

    def test_diagonal_reference(self):
        assert bound_diagonal_adagrad([1.0, 3.0], [2.0, 1.0]) == pytest.approx(9.0)

    @given(
        D_i=st.lists(st.floats(1e-2, 10.0), min_size=1, max_size=6),
        scale=st.floats(0.0, 5.0),
        G=st.floats(0.0, 100.0),
    )
    def test_coordinate_widths_never_lose(self, D_i, scale, G):
        n = len(D_i)
        comparison = per_coordinate_improvement(D_i, [scale * d for d in D_i], [G] * n)
        assert comparison.coordinate_form <= comparison.uniform_form * (1.0 + 1e-12) + 1e-300


class TestDoublingBounds:
    def test_single_round(self):
        doubling = bounds_doubling(1.0, ConstantBudget(0.0, 1.0), 1, [1.0])
        assert doubling.sum_form == pytest.approx(math.sqrt(2.0))
        assert doubling.segmented == pytest.approx(math.sqrt(2.0))

    def test_zero_gradients(self):
        doubling = bounds_doubling(2.0, SqrtBudget(1.0, 2.0), 10, np.zeros(10))
        assert doubling.sum_form == 0.0
        assert doubling.max_form == 0.0

    def test_segmented_is_tightest_sum(self):
        norms = np.random.default_rng(1).uniform(0.0, 2.0, 100)
        doubling = bounds_doubling(2.0, SqrtBudget(1.0, 2.0), 100, norms)
        assert doubling.segmented <= doubling.sum_form * (1.0 + 1e-12)

    def test_norm_count(self):
        with pytest.raises(InvalidInputError):
            bounds_doubling(1.0, ConstantBudget(0.0, 1.0), 3, [1.0])

    def test_numpy_integer_horizon(self):
        norms = np.ones(7)
        assert bounds_doubling(2.0, SqrtBudget(1.0, 2.0), np.int64(7), norms) == bounds_doubling(
            2.0, SqrtBudget(1.0, 2.0), 7, norms
        )


class TestLowerBounds:
    def test_sum_form(self):
        assert lower_bound_sum(1.0, 0.0, 10.0) == pytest.approx(3.5355339059327378)

    def test_floor(self):
        assert lower_bound_sum(1.0, 2.5, 1.0) / lower_bound_sum(1.0, 0.0, 1.0) == pytest.approx(math.sqrt(3.0))
        assert lower_bound_sum(0.3, 1.5, 1.0) / lower_bound_sum(0.3, 0.0, 1.0) == pytest.approx(math.sqrt(6.0))

    def test_max_form(self):
        assert lower_bound_max(1.0, 0.0, 1.0, 16) == pytest.approx(1.0)

    @given(D=diameters, k=st.integers(0, 20))
    def test_pieces_match_segmented_comparator(self, D, k):
        assert lower_bound_sum(D, k * D, 1.0) / lower_bound_sum(D, 0.0, 1.0) == pytest.approx(
            math.sqrt(max_segments(k * D, D))
        )
        assert max_segments(k * D, D) == k + 1

    def test_per_coordinate(self):
        assert lower_bound_per_coordinate([1.0, 0.0], [0.0, 0.0], [10.0, 5.0]) == pytest.approx(3.5355339059327378)

    @given(D=diameters, P=budgets, G=st.floats(1e-3, 1e4))
    def test_minimax_gap(self, D, P, G):
        gap = bound_adaptive(D, P, P, G) / lower_bound_sum(D, P, G)
        assert gap == pytest.approx(minimax_gap(D, P), rel=1e-9)
        assert gap >= 4.0 * (1.0 - 1e-12)
        assert gap <= 4.0 * math.sqrt(3.0) * (1.0 + 1e-12)


class TestRegret:
    def test_exceeds(self):
        assert not exceeds(1.0 + 1e-12, 1.0, 1e-9)
        assert exceeds(1.1, 1.0, 1e-9)
        assert not exceeds(-5.0, 0.0, 1e-9)

    def test_tracking_comparator_has_zero_regret(self, unit_ball):
        stream = gen_rademacher([0.6, 0.8], 1.0, 20, seed=0)
        records = run(stream, unit_ball, [0.0, 0.0], Adaptive(2.0, 2.0), 20)
        decisions = np.stack([r.decision for r in records])
        comparator = ComparatorPath.build(decisions, path_variation(decisions), unit_ball)
        report = dynamic_regret(records, comparator, stream)
        assert report.linearized_regret == 0.0
        assert report.realized_dynamic_regret == 0.0

    def test_linear_losses_agree(self, unit_ball):
        stream = gen_rademacher([0.6, 0.8], 2.0, 50, seed=5)
        records = run(stream, unit_ball, [0.0, 0.0], Adaptive(2.0, 0.0), 50)
        comparator = best_segmented_comparator(stream.gradients, unit_ball, 0.0).expand(unit_ball)
        report = dynamic_regret(records, comparator, stream)
        assert report.realized_dynamic_regret == report.linearized_regret
        assert report.total_energy == pytest.approx(2.0 * math.sqrt(50.0))
        assert report.max_grad_norm == pytest.approx(2.0)

    def test_absolute_loss_hand_trace(self, interval):
        features = np.array([[1.0], [2.0], [-1.0]])
        targets = np.array([0.5, -1.0, 0.2])
        stream = AbsoluteRegression(features, targets)
        records = run(stream, interval, [0.0], Adaptive(2.0, 0.0), 3)
        comparator = ComparatorPath.fixed([0.1], 3, interval)
        expected = sum(
            abs(float(x @ r.decision) - d) - abs(float(x[0]) * 0.1 - d)
            for x, d, r in zip(features, targets, records)
        )
        report = dynamic_regret(records, comparator, stream)
        assert report.realized_dynamic_regret == pytest.approx(expected, rel=1e-12)
        assert not exceeds(report.realized_dynamic_regret, report.linearized_regret, 1e-9)

    def test_length_mismatch(self, interval):
        stream = LinearFixed(np.ones((3, 1)))
        records = run(stream, interval, [0.0], Adaptive(2.0, 0.0), 3)
        with pytest.raises(InvalidInputError):
            dynamic_regret(records, ComparatorPath.fixed([0.0], 2, interval), stream)

    def test_diagnostics(self, interval):
        stream = LinearFixed(np.array([[1.0], [-1.0], [1.0]]))
        records = run(stream, interval, [0.0], Adaptive(2.0, 2.0), 3)
        comparator = ComparatorPath.build([[-1.0], [1.0], [1.0]], 2.0, interval)
        distance, moves = diagnostics(records, comparator)
        assert distance[0] == 1.0
        np.testing.assert_array_equal(moves, [2.0, 0.0, 0.0])


class TestEvaluateBounds:
    def _evaluate(self, feasible_set, stream, policy, comparator, horizon):
        center = feasible_set.linear_minimizer(np.zeros(feasible_set.dimension))
        records = run(stream, feasible_set, center, policy, horizon)
        report = dynamic_regret(records, comparator, stream)
        return evaluate_bounds(report, records, comparator, feasible_set, policy, 1e-9)

    def test_adaptive_run(self, unit_ball):
        stream = gen_rademacher([0.6, 0.8], 1.5, 300, seed=2)
        comparator = best_segmented_comparator(stream.gradients, unit_ball, 4.0).expand(unit_ball)
        report = self._evaluate(unit_ball, stream, Adaptive(2.0, 4.0), comparator, 300)
        assert report.violations == []
        assert {"realized_rates", "constant", "adaptive"} <= report.bounds.keys()
        assert report.bounds["realized_rates"] <= report.bounds["adaptive"] * (1.0 + 1e-9)
        assert report.lower_bounds["sum"] <= report.bounds["adaptive"]

    def test_increasing_rate_breaks_precondition(self, unit_ball):
        stream = gen_rademacher([0.6, 0.8], 1.0, 50, seed=2)
        comparator = best_segmented_comparator(stream.gradients, unit_ball, 0.0).expand(unit_ball)
        report = self._evaluate(unit_ball, stream, IncreasingRate(Adaptive(2.0, 0.0)), comparator, 50)
        assert any(v.startswith("realized_rates precondition") for v in report.violations)

    def test_constant_oracle(self, unit_ball):
        stream = gen_rademacher([1.0, 0.0], 1.0, 100, seed=4)
        comparator = best_segmented_comparator(stream.gradients, unit_ball, 2.0).expand(unit_ball)
        policy = ConstantOracle(2.0, 2.0, stream.total_energy())
        report = self._evaluate(unit_ball, stream, policy, comparator, 100)
        assert "constant_tuned" in report.bounds
        assert report.violations == []

    def test_per_coordinate(self):
        box = Box(lower=np.array([-5.0, -0.05]), upper=np.array([5.0, 0.05]))
        stream = gen_rademacher([0.6, 0.8], 1.0, 200, seed=6)
        comparator = best_segmented_comparator(stream.gradients, box, 10.5).expand(box)
        policy = PerCoordinate(box.coordinate_diameters(), [10.5, 10.5])
        report = self._evaluate(box, stream, policy, comparator, 200)
        assert "per_coordinate" in report.bounds
        assert "realized_rates" not in report.bounds
        assert report.violations == []

    def test_doubling(self, unit_ball):
        budget_fn = SqrtBudget(0.2, 2.0)
        stream = gen_rademacher([0.6, 0.8], 1.0, 255, seed=8)
        comparator = budgeted_comparator(stream.gradients, unit_ball, budget_fn)
        report = self._evaluate(unit_ball, stream, DoublingReset(2.0, budget_fn), comparator, 255)
        assert {"doubling_sum", "doubling_max", "doubling_segmented"} <= report.bounds.keys()
        assert report.violations == []

    def test_doubling_rate_rising_inside_segment(self, unit_ball):
        budget_fn = SqrtBudget(0.2, 2.0)
        stream = gen_rademacher([0.6, 0.8], 1.0, 63, seed=8)
        comparator = budgeted_comparator(stream.gradients, unit_ball, budget_fn)
        report = self._evaluate(unit_ball, stream, _RisingDoubling(2.0, budget_fn), comparator, 63)
        assert any(v.startswith("realized_rates precondition (segment") for v in report.violations)


class _RisingDoubling(DoublingReset):
    def rate(self, energy, t):
        return super().rate(energy, t) * t
