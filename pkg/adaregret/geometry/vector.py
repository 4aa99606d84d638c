"""Validation helpers for real vectors."""

from collections.abc import Sequence

import numpy as np

from adaregret.errors import InvalidInputError

ArrayLike = np.ndarray | Sequence[float] | float


def as_vector(values: ArrayLike, *, name: str = "vector") -> np.ndarray:
    """Return ``values`` as a fresh 1-D float64 array with finite entries."""
    try:
        vector = np.array(values, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise InvalidInputError(f"{name}: not a real vector ({e})") from e
    if vector.ndim == 0:
        vector = vector.reshape(1)
    if vector.ndim != 1 or vector.size == 0:
        raise InvalidInputError(f"{name}: expected a non-empty 1-D vector, got shape {vector.shape}")
    if not np.all(np.isfinite(vector)):
        raise InvalidInputError(f"{name}: entries must be finite")
    return vector


def as_matrix(rows: np.ndarray | Sequence[ArrayLike], *, name: str = "sequence") -> np.ndarray:
    """Stack a non-empty sequence of equal-length vectors into a (T, N) array."""
    if isinstance(rows, np.ndarray):
        matrix = np.array(rows, dtype=np.float64)
        if matrix.ndim == 1:
            matrix = matrix.reshape(-1, 1)
    else:
        vectors = [as_vector(row, name=f"{name}[{i}]") for i, row in enumerate(rows)]
        if not vectors:
            raise InvalidInputError(f"{name}: must not be empty")
        sizes = {v.size for v in vectors}
        if len(sizes) != 1:
            raise InvalidInputError(f"{name}: dimension mismatch {sorted(sizes)}")
        matrix = np.vstack(vectors)
    if matrix.ndim != 2 or matrix.shape[0] == 0 or matrix.shape[1] == 0:
        raise InvalidInputError(f"{name}: expected shape (T, N), got {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise InvalidInputError(f"{name}: entries must be finite")
    return matrix


def check_dimension(vector: np.ndarray, dimension: int, *, name: str = "vector") -> None:
    """Raise if the last axis of ``vector`` does not have ``dimension`` entries."""
    if vector.shape[-1] != dimension:
        raise InvalidInputError(
            f"{name}: dimension mismatch (expected {dimension}, got {vector.shape[-1]})"
        )
