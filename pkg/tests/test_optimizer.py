"""Engine steps, runs and batched runs."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from adaregret.errors import InvalidInputError, TruncatedRunError, UnsupportedSetError
from adaregret.geometry import Ball, Box
from adaregret.optimizer import StepKind, Trace, init, run, run_batch, step, step_per_coordinate
from adaregret.scheduler import Adaptive, ConstantBudget, ConstantOracle, DoublingReset, PerCoordinate
from adaregret.streams import LinearFixed, ZeroPrefix, ZeroStream, gen_rademacher, gen_regression


class TestInit:
    def test_origin(self, unit_ball):
        state = init(unit_ball, [0.0, 0.0])
        assert state.round == 1
        assert state.zero_prefix
        assert state.energy.G == 0.0
        assert state.notes == ()

    def test_infeasible_start_is_projected(self):
        state = init(Box(lower=np.zeros(2), upper=np.ones(2)), [2.0, 2.0])
        np.testing.assert_array_equal(state.decision, [1.0, 1.0])
        assert "projected" in state.notes[0]

    def test_dimension_mismatch(self, unit_ball):
        with pytest.raises(InvalidInputError):
            init(unit_ball, [0.0])


class TestStep:
    def test_zero_prefix_is_skipped(self, interval):
        state, record = step(init(interval, [0.0]), [0.0], Adaptive(2.0, 0.0))
        assert record.kind is StepKind.SKIPPED
        assert record.rate is None
        np.testing.assert_array_equal(state.decision, [0.0])
        assert state.round == 2

    def test_hand_trace(self, interval):
        policy = Adaptive(2.0, 0.0)
        state, first = step(init(interval, [0.0]), [1.0], policy)
        assert first.rate == pytest.approx(math.sqrt(2.0))
        np.testing.assert_array_equal(state.decision, [-1.0])
        state, second = step(state, [1.0], policy)
        assert second.energy == pytest.approx(math.sqrt(2.0))
        assert second.rate == pytest.approx(1.0)
        np.testing.assert_array_equal(state.decision, [-1.0])

    def test_zero_gradient_after_prefix(self, interval):
        policy = Adaptive(2.0, 0.0)
        state, first = step(init(interval, [0.0]), [0.5], policy)
        state, second = step(state, [0.0], policy)
        assert second.kind is StepKind.ZERO_STEP
        assert second.rate == first.rate
        np.testing.assert_array_equal(second.next_decision, second.decision)

    def test_non_finite_gradient(self, interval):
        with pytest.raises(InvalidInputError):
            step(init(interval, [0.0]), [float("inf")], Adaptive(2.0, 0.0))


class TestPerCoordinate:
    def test_dormant_coordinate_stays(self):
        box = Box.cube(2)
        policy = PerCoordinate(box.coordinate_diameters(), [0.0, 0.0])
        state, record = step(init(box, [0.0, 0.0], per_coordinate=True), [1.0, 0.0], policy)
        np.testing.assert_array_equal(state.decision, [-1.0, 0.0])
        assert record.dormant.tolist() == [False, True]

    def test_prefix(self):
        box = Box.cube(2)
        policy = PerCoordinate(box.coordinate_diameters(), [0.0, 0.0])
        state, record = step(init(box, [0.3, 0.0], per_coordinate=True), [0.0, 0.0], policy)
        assert record.skipped
        np.testing.assert_array_equal(state.decision, [0.3, 0.0])

    def test_ball_unsupported(self, unit_ball):
        policy = PerCoordinate([2.0, 2.0], [0.0, 0.0])
        with pytest.raises(UnsupportedSetError):
            step_per_coordinate(init(unit_ball, [0.0, 0.0]), [1.0, 0.0], policy)

    # rounding keeps squared gradients clear of underflow
    @given(
        gradients=arrays(np.float64, (12, 1), elements=st.floats(-5.0, 5.0).map(lambda x: round(x, 6))),
        p_hat=st.floats(0.0, 10.0),
    )
    def test_one_dimension_matches_scalar_engine(self, gradients, p_hat):
        box = Box(lower=np.array([-1.5]), upper=np.array([0.5]))
        stream = LinearFixed(gradients)
        scalar = run(stream, box, [0.0], Adaptive(box.diameter(), p_hat), 12)
        coordinate = run(stream, box, [0.0], PerCoordinate(box.coordinate_diameters(), [p_hat]), 12)
        for a, b in zip(scalar, coordinate):
            np.testing.assert_array_equal(a.next_decision, b.next_decision)


class TestRun:
    def test_all_zero_stream(self, unit_ball):
        records = run(ZeroStream(5, 2), unit_ball, [0.1, 0.2], Adaptive(2.0, 0.0), 5)
        assert all(r.skipped for r in records)
        assert all(np.array_equal(r.decision, [0.1, 0.2]) for r in records)

    def test_single_round(self, unit_ball):
        records = run(gen_rademacher([1.0, 0.0], 1.0, 1, seed=0), unit_ball, [0.0, 0.0], Adaptive(2.0, 0.0), 1)
        assert len(records) == 1

    def test_truncated(self, interval):
        with pytest.raises(TruncatedRunError) as e:
            run(LinearFixed(np.ones((2, 1))), interval, [0.0], Adaptive(2.0, 0.0), 3)
        assert len(e.value.records) == 2

    def test_decisions_stay_feasible(self, unit_ball):
        stream, _ = gen_regression(200, 2, 0.05, 0.2, seed=4, feasible_set=unit_ball)
        records = run(stream, unit_ball, [0.0, 0.0], Adaptive(2.0, 1.0), 200)
        assert all(unit_ball.contains(r.decision, 1e-12) for r in records)

    def test_zero_prefix_leaves_trajectory(self, unit_ball):
        inner = gen_rademacher([0.6, 0.8], 1.5, 40, seed=2)
        policy = Adaptive(2.0, 0.5)
        plain = run(inner, unit_ball, [0.0, 0.0], policy, 40)
        wrapped = run(ZeroPrefix(7, inner), unit_ball, [0.0, 0.0], policy, 47)
        assert all(r.skipped for r in wrapped[:7])
        for a, b in zip(plain, wrapped[7:]):
            np.testing.assert_array_equal(a.decision, b.decision)

    def test_deterministic(self, unit_ball):
        def play():
            stream, _ = gen_regression(50, 2, 0.02, 0.1, seed=9, feasible_set=unit_ball)
            return Trace.from_records(run(stream, unit_ball, [0.0, 0.0], Adaptive(2.0, 1.0), 50))

        first, second = play(), play()
        np.testing.assert_array_equal(first.decisions, second.decisions)
        np.testing.assert_array_equal(first.rates, second.rates)

    def test_rademacher_energy(self, unit_ball):
        records = run(gen_rademacher([0.6, 0.8], 3.0, 100, seed=1), unit_ball, [0.0, 0.0], Adaptive(2.0, 0.0), 100)
        assert records[-1].energy == pytest.approx(30.0, rel=1e-12)

    def test_doubling_restart(self, interval):
        policy = DoublingReset(2.0, ConstantBudget(0.0, 2.0), reset_decision=True)
        records = run(LinearFixed(np.ones((4, 1))), interval, [0.5], policy, 4)
        assert [r.segment for r in records] == [1, 2, 2, 3]
        # energy restarts at round 2 and the iterate returns to w_1
        assert records[1].energy == 1.0
        np.testing.assert_array_equal(records[1].decision, [0.5])
        np.testing.assert_array_equal(records[3].decision, [0.5])


class TestTrace:
    def test_first_active_round(self, interval):
        stream = ZeroPrefix(3, LinearFixed(np.ones((2, 1))))
        trace = Trace.from_records(run(stream, interval, [0.0], Adaptive(2.0, 0.0), 5))
        assert trace.first_active_round == 4
        assert np.isnan(trace.rates[:3]).all()
        assert trace.horizon == 5


class TestRunBatch:
    def test_matches_sequential_runs(self):
        ball = Ball.centered(2)
        policy = Adaptive(2.0, 0.0)
        streams = [gen_rademacher([0.6, 0.8], 1.0, 30, seed=s) for s in range(3)]
        gradients = np.stack([s.gradients for s in streams])

        batch = run_batch(ball, [0.0, 0.0], policy, 30, lambda t, W: gradients[:, t - 1], 3)

        for r, stream in enumerate(streams):
            records = run(stream, ball, [0.0, 0.0], policy, 30)
            loss = sum(float(rec.gradient @ rec.decision) for rec in records)
            assert batch.linear_loss[r] == pytest.approx(loss, rel=1e-12, abs=1e-12)
            np.testing.assert_allclose(batch.final_decision[r], records[-1].next_decision, rtol=1e-12, atol=1e-14)
        np.testing.assert_allclose(batch.total_energy, math.sqrt(30.0))

    def test_constant_oracle(self, interval):
        batch = run_batch(interval, [0.0], ConstantOracle(2.0, 0.0, 2.0), 4, lambda t, W: np.ones_like(W), 2)
        np.testing.assert_allclose(batch.final_decision, [[-1.0], [-1.0]])

    def test_rejects_restarting_policy(self, interval):
        policy = DoublingReset(2.0, ConstantBudget(0.0, 2.0))
        with pytest.raises(InvalidInputError):
            run_batch(interval, [0.0], policy, 4, lambda t, W: np.ones_like(W), 1)

    def test_shape_check(self, interval):
        with pytest.raises(InvalidInputError):
            run_batch(interval, [0.0], Adaptive(2.0, 0.0), 4, lambda t, W: np.ones((1, 2)), 1)
