"""Learning-rate policies consumed by the optimizer."""

import math
from abc import ABC, abstractmethod

import numpy as np

from adaregret.errors import InvalidInputError, RateUndefinedError
from adaregret.geometry.vector import ArrayLike, as_vector
from adaregret.scheduler.budgets import PathBudgetFunction
from adaregret.scheduler.doubling import DoublingSegment, doubling_schedule
from adaregret.scheduler.energy import GradientEnergy
from adaregret.scheduler.rates import (
    CoordinateRates,
    rate_adaptive,
    rate_constant_oracle,
    rate_per_coordinate,
)


class RatePolicy(ABC):
    """Produces eta_t from the gradient energy (which already includes round t)."""

    kind: str = "base"
    reset_decision: bool = False

    def segment(self, t: int) -> DoublingSegment | None:
        """Restart segment containing round t; None when the policy never restarts."""
        return None


class ScalarRatePolicy(RatePolicy):
    """A single rate shared by every coordinate."""

    def __init__(self, diameter: float) -> None:
        if not (math.isfinite(diameter) and diameter > 0.0):
            raise InvalidInputError(f"diameter must be positive, got {diameter}")
        self.diameter = float(diameter)

    @abstractmethod
    def rate(self, energy: GradientEnergy, t: int) -> float:
        """Rate for round t given the energy after folding in g_t."""

    def rate_batch(self, G: np.ndarray, t: int) -> np.ndarray:
        """Rates for many independent runs at the same round (all G > 0)."""
        return np.array([self.rate(GradientEnergy(float(g) ** 2), t) for g in G])


class ConstantOracle(ScalarRatePolicy):
    """Fixed rate tuned with the realized total energy G_T."""

    kind = "constant_oracle"

    def __init__(self, diameter: float, budget: float, total_energy: float) -> None:
        super().__init__(diameter)
        self.budget = float(budget)
        self.total_energy = float(total_energy)
        self._eta = rate_constant_oracle(self.diameter, self.budget, self.total_energy)

    def rate(self, energy: GradientEnergy, t: int) -> float:
        return self._eta

    def rate_batch(self, G: np.ndarray, t: int) -> np.ndarray:
        return np.full(np.shape(G), self._eta)


class Adaptive(ScalarRatePolicy):
    """eta_t = D * sqrt(P_hat/D + 1/2) / G_t."""

    kind = "adaptive"

    def __init__(self, diameter: float, p_hat: float) -> None:
        super().__init__(diameter)
        if not (math.isfinite(p_hat) and p_hat >= 0.0):
            raise InvalidInputError(f"P_hat must be nonnegative, got {p_hat}")
        self.p_hat = float(p_hat)
        self._numerator = self.diameter * math.sqrt(self.p_hat / self.diameter + 0.5)

    def rate(self, energy: GradientEnergy, t: int) -> float:
        return rate_adaptive(self.diameter, self.p_hat, energy.G)

    def rate_batch(self, G: np.ndarray, t: int) -> np.ndarray:
        G = np.asarray(G, dtype=np.float64)
        if np.any(G <= 0.0):
            raise RateUndefinedError("adaptive rate needs G_t > 0 for every run")
        return self._numerator / G


class DoublingReset(ScalarRatePolicy):
    """
    Adaptive rates restarted at rounds 2^(k-1), tuned with P(2^k - 1).

    The optimizer resets the energy at each segment start; with
    ``reset_decision`` it also moves the iterate back to w_1.
    """

    kind = "doubling"

    def __init__(
        self,
        diameter: float,
        budget_fn: PathBudgetFunction,
        reset_decision: bool = False,
    ) -> None:
        super().__init__(diameter)
        self.budget_fn = budget_fn
        self.reset_decision = reset_decision
        self._segments: dict[int, DoublingSegment] = {}

    def segment(self, t: int) -> DoublingSegment:
        k = int(t).bit_length()
        if k not in self._segments:
            self._segments[k] = doubling_schedule(t, self.budget_fn)
        return self._segments[k]

    def rate(self, energy: GradientEnergy, t: int) -> float:
        return rate_adaptive(self.diameter, self.segment(t).budget, energy.G)


class PerCoordinate(RatePolicy):
    """Independent adaptive rate for each coordinate of a hyper-rectangle."""

    kind = "per_coordinate"

    def __init__(self, coordinate_diameters: ArrayLike, p_hat: ArrayLike) -> None:
        self.coordinate_diameters = as_vector(coordinate_diameters, name="D_i")
        self.p_hat = as_vector(p_hat, name="P_hat_i")
        if self.coordinate_diameters.size != self.p_hat.size:
            raise InvalidInputError("D_i and P_hat_i must have the same dimension")
        if np.any(self.coordinate_diameters < 0.0) or np.any(self.p_hat < 0.0):
            raise InvalidInputError("D_i and P_hat_i must be nonnegative")

    def rates(self, energy: GradientEnergy) -> CoordinateRates:
        if energy.coordinate_squared is None:
            raise InvalidInputError("per-coordinate policy needs a per-coordinate energy")
        return rate_per_coordinate(self.coordinate_diameters, self.p_hat, energy.per_coordinate)
