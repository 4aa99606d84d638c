"""Regret upper and lower bounds as evaluatable expressions."""

import math
from collections.abc import Sequence
from typing import NamedTuple

import numpy as np

from adaregret.errors import InvalidInputError, PreconditionViolationError
from adaregret.geometry.path import max_segments
from adaregret.geometry.vector import ArrayLike, as_vector
from adaregret.scheduler.budgets import PathBudgetFunction

SQRT2 = math.sqrt(2.0)


def _check(D: float, P: float) -> None:
    if not (math.isfinite(D) and D > 0.0):
        raise InvalidInputError(f"diameter must be positive, got {D}")
    if not (math.isfinite(P) and P >= 0.0):
        raise InvalidInputError(f"path budget must be nonnegative, got {P}")


def bound_realized_rates(
    D: float,
    P: float,
    rates: Sequence[float] | np.ndarray,
    grad_norms: Sequence[float] | np.ndarray,
    t0: int | None = None,
) -> float:
    """
    D^2 (P/D + 1/2) / eta_T + sum_{t >= t0} eta_t/2 ||g_t||^2 for a
    nonincreasing positive rate sequence.

    ``rates`` may hold NaN for skipped rounds before t0 (1-based, default:
    first nonzero gradient). Without any nonzero gradient the regret is 0
    and the bound is its first term, or 0 when no rate was ever set.
    """
    _check(D, P)
    rates = np.asarray(rates, dtype=np.float64)
    norms = np.asarray(grad_norms, dtype=np.float64)
    if rates.shape != norms.shape or rates.ndim != 1 or rates.size == 0:
        raise InvalidInputError("rates and grad_norms must be equal-length non-empty sequences")
    if t0 is None:
        active = np.nonzero(norms > 0.0)[0]
        t0 = int(active[0]) + 1 if active.size else None
    head = D * D * (P / D + 0.5)
    if t0 is None:
        return head / rates[-1] if math.isfinite(rates[-1]) and rates[-1] > 0.0 else 0.0
    tail = rates[t0 - 1:]
    if not np.all(np.isfinite(tail)) or np.any(tail <= 0.0):
        raise PreconditionViolationError(f"rates must be positive from round t0={t0}")
    rises = np.nonzero(np.diff(tail) > 0.0)[0]
    if rises.size:
        t = t0 + int(rises[0]) + 1
        raise PreconditionViolationError(f"rate increases at round {t} ({tail[rises[0]]} -> {tail[rises[0] + 1]})")
    return head / tail[-1] + math.fsum(0.5 * tail * norms[t0 - 1:] ** 2)


def bound_constant(D: float, P: float, G_T: float) -> float:
    """D * sqrt(1 + 2P/D) * G_T (0 when G_T = 0)."""
    _check(D, P)
    return D * math.sqrt(1.0 + 2.0 * P / D) * G_T


def bound_adaptive(D: float, P: float, p_hat: float | None, G_T: float) -> float:
    """
    ((P/D + 1/2) / sqrt(P_hat/D + 1/2) + sqrt(P_hat/D + 1/2)) * D * G_T.

    With P_hat = P (or None) this is 2 D sqrt(P/D + 1/2) G_T.
    """
    _check(D, P)
    if p_hat is None or p_hat == P:
        return 2.0 * D * math.sqrt(P / D + 0.5) * G_T
    if not (math.isfinite(p_hat) and p_hat >= 0.0):
        raise InvalidInputError(f"P_hat must be nonnegative, got {p_hat}")
    tuned = math.sqrt(p_hat / D + 0.5)
    return ((P / D + 0.5) / tuned + tuned) * D * G_T


def bound_per_coordinate(
    D_i: ArrayLike,
    P_i: ArrayLike,
    G_i: ArrayLike,
    p_hat_i: ArrayLike | None = None,
) -> float:
    """Sum over coordinates of the adaptive bound; coordinates with D_i = 0 contribute 0."""
    D_i, P_i, G_i = (as_vector(v, name=n) for v, n in ((D_i, "D_i"), (P_i, "P_i"), (G_i, "G_i")))
    p_hat_i = P_i if p_hat_i is None else as_vector(p_hat_i, name="P_hat_i")
    if not (D_i.size == P_i.size == G_i.size == p_hat_i.size):
        raise InvalidInputError("per-coordinate bound inputs must have equal dimensions")
    return math.fsum(
        bound_adaptive(d, p, q, g)
        for d, p, q, g in zip(D_i, P_i, p_hat_i, G_i)
        if d > 0.0
    )


class DoublingBounds(NamedTuple):
    """Two guarantees of the doubling-trick schedule, plus the per-segment form they relax."""

    sum_form: float
    max_form: float
    segmented: float


def bounds_doubling(
    D: float,
    budget_fn: PathBudgetFunction,
    horizon: int,
    grad_norms: Sequence[float] | np.ndarray,
) -> DoublingBounds:
    """
    sum form: 2 sqrt(2) sqrt(ceil(log2(T+1))) D sqrt(P(T)/D + 1/4) G_T
    max form: 4 sqrt(2 + sqrt(2)) D sqrt(P(T)/D + 1/4) max||g_t|| sqrt(T)
    segmented: 2 sqrt(2) D sqrt(P(T)/D + 1/4) sum_k sqrt(segment energy)
    """
    if horizon < 1:
        raise InvalidInputError(f"horizon must be >= 1, got {horizon}")
    norms = np.asarray(grad_norms, dtype=np.float64)
    if norms.shape != (horizon,):
        raise InvalidInputError(f"expected {horizon} gradient norms, got shape {norms.shape}")
    P_T = budget_fn(horizon)
    _check(D, P_T)
    segments = int(horizon).bit_length()  # ceil(log2(T + 1))
    factor = D * math.sqrt(P_T / D + 0.25)
    squares = norms**2
    G_T = math.sqrt(math.fsum(squares))
    L = float(norms.max())
    starts = [(1 << k) - 1 for k in range(segments)]
    segment_energy = np.add.reduceat(squares, starts)
    return DoublingBounds(
        sum_form=2.0 * SQRT2 * math.sqrt(segments) * factor * G_T,
        max_form=4.0 * math.sqrt(2.0 + SQRT2) * factor * L * math.sqrt(horizon),
        segmented=2.0 * SQRT2 * factor * math.fsum(np.sqrt(segment_energy)),
    )


def bound_doubling_segmented(
    D: float,
    budget_fn: PathBudgetFunction,
    horizon: int,
    grad_norms: Sequence[float] | np.ndarray,
) -> float:
    return bounds_doubling(D, budget_fn, horizon, grad_norms).segmented


def lower_bound_sum(D: float, P: float, G_T: float) -> float:
    """Worst-case regret under a total energy constraint: D sqrt(floor(P/D)+1) G_T / (2 sqrt 2)."""
    _check(D, P)
    return D * math.sqrt(max_segments(P, D)) / (2.0 * SQRT2) * G_T


def lower_bound_max(D: float, P: float, L: float, horizon: int) -> float:
    """Worst-case regret under a per-round norm constraint: D sqrt(floor(P/D)+1) L sqrt(T) / 4."""
    _check(D, P)
    return D * math.sqrt(max_segments(P, D)) / 4.0 * L * math.sqrt(horizon)


def lower_bound_per_coordinate(D_i: ArrayLike, P_i: ArrayLike, G_i: ArrayLike) -> float:
    """Sum of coordinate-wise sum-form lower bounds for a hyper-rectangle."""
    D_i, P_i, G_i = (as_vector(v, name=n) for v, n in ((D_i, "D_i"), (P_i, "P_i"), (G_i, "G_i")))
    if not (D_i.size == P_i.size == G_i.size):
        raise InvalidInputError("per-coordinate bound inputs must have equal dimensions")
    return math.fsum(lower_bound_sum(d, p, g) for d, p, g in zip(D_i, P_i, G_i) if d > 0.0)


def minimax_gap(D: float, P: float) -> float:
    """bound_adaptive / lower_bound_sum, a constant at most 4 sqrt(3)."""
    _check(D, P)
    return 4.0 * SQRT2 * math.sqrt(P / D + 0.5) / math.sqrt(max_segments(P, D))


def bound_diagonal_adagrad(D_i: ArrayLike, G_i: ArrayLike) -> float:
    """Diagonal-preconditioning static reference D_inf * sum_i sqrt(sum_t g_{t,i}^2)."""
    D_i = as_vector(D_i, name="D_i")
    G_i = as_vector(G_i, name="G_i")
    if D_i.size != G_i.size:
        raise InvalidInputError("D_i and G_i must have equal dimensions")
    return float(D_i.max()) * math.fsum(G_i)


class CoordinateComparison(NamedTuple):
    """Coordinate-wise widths against a uniform D_inf in the per-coordinate bound."""

    coordinate_form: float
    uniform_form: float


def per_coordinate_improvement(D_i: ArrayLike, P_i: ArrayLike, G_i: ArrayLike) -> CoordinateComparison:
    """
    sum_i D_i sqrt(P_i/D_i + 1/2) G_i against D_inf sum_i sqrt(P_i/D_inf + 1/2) G_i.

    Coordinates with D_i = 0 contribute 0 to the first form.
    """
    D_i, P_i, G_i = (as_vector(v, name=n) for v, n in ((D_i, "D_i"), (P_i, "P_i"), (G_i, "G_i")))
    if not (D_i.size == P_i.size == G_i.size):
        raise InvalidInputError("inputs must have equal dimensions")
    widest = float(D_i.max())
    coordinate = math.fsum(
        d * math.sqrt(p / d + 0.5) * g for d, p, g in zip(D_i, P_i, G_i) if d > 0.0
    )
    uniform = widest * math.fsum(np.sqrt(P_i / widest + 0.5) * G_i)
    return CoordinateComparison(coordinate_form=coordinate, uniform_form=uniform)
