"""Jacobi eigenvalues, Gram accumulation and the trace inequality."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from adaregret.analysis import GramAccumulator, symmetric_eigenvalues, trace_inequality
from adaregret.errors import InvalidInputError, NumericalFailureError
from adaregret.experiments import trace_study
from adaregret.experiments.trace_study import random_gradients
from adaregret.streams import philox


class TestEigenvalues:
    @pytest.mark.parametrize(
        "matrix, expected",
        [
            (np.eye(2), [1.0, 1.0]),
            (np.diag([3.0, 5.0]), [3.0, 5.0]),
            (np.array([[2.0, 1.0], [1.0, 2.0]]), [1.0, 3.0]),
            (np.zeros((3, 3)), [0.0, 0.0, 0.0]),
        ],
    )
    def test_closed_form(self, matrix, expected):
        np.testing.assert_allclose(symmetric_eigenvalues(matrix), expected, atol=1e-12)

    @given(factor=arrays(np.float64, (5, 4), elements=st.floats(-3.0, 3.0)))
    def test_matches_reference_solver(self, factor):
        matrix = factor.T @ factor
        values = symmetric_eigenvalues(matrix)
        scale = max(float(np.trace(matrix)), 1.0)
        np.testing.assert_allclose(values, np.linalg.eigvalsh(matrix), atol=1e-9 * scale)
        assert float(np.sum(values)) == pytest.approx(float(np.trace(matrix)), rel=1e-9, abs=1e-12)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_converges_on_gram_instances(self, seed):
        for instance in range(150):
            gradients = random_gradients(instance, seed)
            matrix = gradients.T @ gradients
            scale = max(float(np.trace(matrix)), 1.0)
            np.testing.assert_allclose(
                symmetric_eigenvalues(matrix), np.clip(np.linalg.eigvalsh(matrix), 0.0, None), atol=1e-9 * scale
            )

    def test_rejects_asymmetric(self):
        with pytest.raises(InvalidInputError, match="symmetric"):
            symmetric_eigenvalues(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_rejects_indefinite(self):
        with pytest.raises(InvalidInputError, match="semidefinite"):
            symmetric_eigenvalues(np.array([[1.0, 2.0], [2.0, 1.0]]))

    @pytest.mark.parametrize("matrix", [np.ones((2, 3)), np.array([[np.nan, 0.0], [0.0, 1.0]])])
    def test_rejects_malformed(self, matrix):
        with pytest.raises(InvalidInputError):
            symmetric_eigenvalues(matrix)

    def test_sweep_limit(self):
        factor = philox(3).standard_normal((6, 6))
        with pytest.raises(NumericalFailureError) as e:
            symmetric_eigenvalues(factor.T @ factor, max_sweeps=1)
        assert e.value.residual > 0.0


class TestGram:
    def test_add_matches_extend(self):
        gradients = philox(1).standard_normal((10, 3))
        one_by_one = GramAccumulator(3)
        for g in gradients:
            one_by_one.add(g)
        batched = GramAccumulator.from_gradients(gradients)
        np.testing.assert_allclose(one_by_one.matrix, batched.matrix, rtol=1e-12)
        assert one_by_one.rounds == batched.rounds == 10
        assert np.trace(batched.matrix) == pytest.approx(batched.energy, rel=1e-10)

    def test_dimension_check(self):
        with pytest.raises(InvalidInputError):
            GramAccumulator(2).add([1.0, 2.0, 3.0])


class TestTraceInequality:
    def test_rank_one(self):
        scales = np.array([[1.0], [-2.0], [0.5]])
        check = trace_inequality(GramAccumulator.from_gradients(scales * np.array([0.6, 0.8])))
        assert check.ratio == pytest.approx(1.0, abs=1e-10)

    def test_identity_gram(self):
        check = trace_inequality(GramAccumulator.from_gradients(np.eye(2)))
        assert check.lhs == pytest.approx(math.sqrt(2.0))
        assert check.rhs == pytest.approx(2.0)
        assert check.ratio == pytest.approx(math.sqrt(2.0))

    def test_no_gradients(self):
        check = trace_inequality(GramAccumulator(3))
        assert (check.lhs, check.rhs, check.ratio) == (0.0, 0.0, 1.0)

    def test_random_instances(self):
        for item in trace_study(40, seed=2):
            assert 1.0 - 1e-10 <= item.ratio <= math.sqrt(item.dimension) + 1e-10
            assert 1 <= item.rounds <= 100

    @given(st.integers(1, 50), st.integers(0, 2**16))
    def test_bounded_by_sqrt_dimension(self, rounds, seed):
        gradients = philox(seed).standard_normal((rounds, 8))
        check = trace_inequality(GramAccumulator.from_gradients(gradients))
        assert 1.0 - 1e-10 <= check.ratio <= math.sqrt(8.0) + 1e-10
