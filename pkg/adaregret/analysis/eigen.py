"""Cyclic Jacobi eigenvalues for small symmetric positive semidefinite matrices."""

import logging
import math

import numpy as np

from adaregret.config import get_settings
from adaregret.errors import InvalidInputError, NumericalFailureError

logger = logging.getLogger(__name__)

SYMMETRY_TOLERANCE = 1e-12
CONVERGENCE_TOLERANCE = 1e-12
NEGATIVE_TOLERANCE = 1e-10


def _off_diagonal(a: np.ndarray) -> float:
    return math.sqrt(float(np.sum(np.square(a - np.diag(np.diag(a))))))


def _rotate(a: np.ndarray, p: int, q: int) -> None:
    """Zero a[p, q] in place with one Jacobi rotation."""
    apq = a[p, q]
    if apq == 0.0:
        return
    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c
    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    a[p, q] = a[q, p] = 0.0


def symmetric_eigenvalues(matrix: np.ndarray, max_sweeps: int | None = None) -> np.ndarray:
    """
    Ascending eigenvalues of a symmetric PSD matrix.

    Sweeps over all (p, q) pairs until off(A) <= 1e-12 * ||A||_F. Slightly
    negative eigenvalues (above -1e-10 * trace) are rounding noise and are
    clamped to 0.
    """
    settings = get_settings()
    a = np.array(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInputError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n > settings.eigen_max_dimension:
        raise InvalidInputError(f"dimension {n} exceeds the eigensolver limit {settings.eigen_max_dimension}")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("matrix has non-finite entries")
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    asymmetry = float(np.max(np.abs(a - a.T))) if a.size else 0.0
    if asymmetry > SYMMETRY_TOLERANCE * scale:
        raise InvalidInputError(f"matrix is not symmetric (max |A - A^T| = {asymmetry:.3e})")
    a = 0.5 * (a + a.T)

    frobenius = float(np.linalg.norm(a))
    target = CONVERGENCE_TOLERANCE * frobenius
    sweeps = max_sweeps or settings.eigen_max_sweeps
    residual = _off_diagonal(a)
    sweep = 0
    while residual > target:
        if sweep == sweeps:
            raise NumericalFailureError(f"Jacobi did not converge in {sweeps} sweeps", residual)
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, p, q)
        residual = _off_diagonal(a)
        sweep += 1
    logger.debug("Jacobi converged in %d sweeps (off=%.3e)", sweep, residual)

    values = np.sort(np.diag(a))
    trace = float(np.sum(values))
    floor = -NEGATIVE_TOLERANCE * max(trace, 0.0)
    if values.size and values[0] < floor:
        raise InvalidInputError(f"matrix is not positive semidefinite (eigenvalue {values[0]:.6g})")
    return np.maximum(values, 0.0)
