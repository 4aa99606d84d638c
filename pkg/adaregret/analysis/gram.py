"""Gram accumulation and the energy versus trace-root comparison."""

import math
from typing import NamedTuple

import numpy as np

from adaregret.analysis.eigen import symmetric_eigenvalues
from adaregret.errors import ContractViolationError, InvalidInputError
from adaregret.geometry.vector import ArrayLike, as_matrix, as_vector, check_dimension

# Eigenvalues this far below the trace are rounding noise of a rank-deficient matrix.
_RANK_FLOOR = 1e-12
_INEQUALITY_SLACK = 1e-8


class GramAccumulator:
    """Running A = sum_t g_t g_t^T together with the scalar energy sum_t ||g_t||^2."""

    def __init__(self, dimension: int) -> None:
        if dimension < 1:
            raise InvalidInputError(f"dimension must be >= 1, got {dimension}")
        self.dimension = dimension
        self.matrix = np.zeros((dimension, dimension))
        self.energy = 0.0
        self.rounds = 0

    def add(self, gradient: ArrayLike) -> None:
        g = as_vector(gradient, name="gradient")
        check_dimension(g, self.dimension, name="gradient")
        self.matrix += np.outer(g, g)
        self.energy += float(g @ g)
        self.rounds += 1

    def extend(self, gradients: np.ndarray) -> None:
        g = as_matrix(gradients, name="gradients")
        check_dimension(g, self.dimension, name="gradients")
        self.matrix += g.T @ g
        self.energy += float(np.sum(g * g))
        self.rounds += g.shape[0]

    @classmethod
    def from_gradients(cls, gradients: np.ndarray) -> "GramAccumulator":
        g = as_matrix(gradients, name="gradients")
        gram = cls(g.shape[1])
        gram.extend(g)
        return gram


class TraceInequality(NamedTuple):
    """lhs = sqrt(sum ||g_t||^2), rhs = tr(sqrt(A)); 1 <= rhs/lhs <= sqrt(N)."""

    lhs: float
    rhs: float
    ratio: float


def trace_inequality(gram: GramAccumulator) -> TraceInequality:
    """Compare the scalar energy with the trace of the PSD square root of A."""
    eigenvalues = symmetric_eigenvalues(gram.matrix)
    trace = float(np.sum(eigenvalues))
    eigenvalues = np.where(eigenvalues < _RANK_FLOOR * trace, 0.0, eigenvalues)
    lhs = math.sqrt(gram.energy)
    rhs = math.fsum(np.sqrt(eigenvalues))
    if lhs == 0.0:
        return TraceInequality(lhs=0.0, rhs=rhs, ratio=1.0)
    if lhs > rhs * (1.0 + _INEQUALITY_SLACK):
        raise ContractViolationError(f"sqrt of energy {lhs:.17g} exceeds tr(sqrt(A)) {rhs:.17g}")
    return TraceInequality(lhs=lhs, rhs=rhs, ratio=rhs / lhs)
