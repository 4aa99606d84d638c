"""Closed-form learning rates."""

import math
from typing import NamedTuple

import numpy as np

from adaregret.errors import InvalidInputError, OracleUndefinedError, RateUndefinedError
from adaregret.geometry.vector import ArrayLike, as_vector


def _check_geometry(D: float, P: float) -> None:
    if not (math.isfinite(D) and D > 0.0):
        raise InvalidInputError(f"diameter must be positive, got {D}")
    if not (math.isfinite(P) and P >= 0.0):
        raise InvalidInputError(f"path budget must be nonnegative, got {P}")


def rate_constant_oracle(D: float, P: float, G_T: float) -> float:
    """Best constant rate in hindsight: D * sqrt(1 + 2P/D) / G_T."""
    _check_geometry(D, P)
    if not G_T > 0.0:
        raise OracleUndefinedError("constant oracle rate needs G_T > 0 (zero energy means zero regret)")
    return D * math.sqrt(1.0 + 2.0 * P / D) / G_T


def rate_adaptive(D: float, p_hat: float, G_t: float) -> float:
    """Online rate D * sqrt(P_hat/D + 1/2) / G_t, with G_t including the current round."""
    _check_geometry(D, p_hat)
    if not G_t > 0.0:
        raise RateUndefinedError("adaptive rate needs G_t > 0; zero-gradient rounds are skipped")
    return D * math.sqrt(p_hat / D + 0.5) / G_t


class CoordinateRates(NamedTuple):
    """Per-coordinate rates; ``dormant`` marks coordinates that receive no update."""

    rates: np.ndarray
    dormant: np.ndarray


def rate_per_coordinate(D_i: ArrayLike, p_hat_i: ArrayLike, G_i: ArrayLike) -> CoordinateRates:
    """
    Apply the adaptive rate coordinate-wise.

    Coordinates with G_{t,i} = 0 are dormant (rate reported as 0). A
    coordinate with D_i = 0 is pinned: its rate is 0 regardless of the
    gradient.
    """
    D_i = as_vector(D_i, name="D_i")
    p_hat_i = as_vector(p_hat_i, name="P_hat_i")
    G_i = as_vector(G_i, name="G_i")
    if not (D_i.size == p_hat_i.size == G_i.size):
        raise InvalidInputError(
            f"dimension mismatch: D_i={D_i.size}, P_hat_i={p_hat_i.size}, G_i={G_i.size}"
        )
    if np.any(D_i < 0.0) or np.any(p_hat_i < 0.0) or np.any(G_i < 0.0):
        raise InvalidInputError("D_i, P_hat_i and G_i must be nonnegative")
    dormant = G_i == 0.0
    active = ~dormant & (D_i > 0.0)
    rates = np.zeros_like(G_i)
    D, p, G = D_i[active], p_hat_i[active], G_i[active]
    rates[active] = D * np.sqrt(p / D + 0.5) / G
    return CoordinateRates(rates=rates, dormant=dormant)
