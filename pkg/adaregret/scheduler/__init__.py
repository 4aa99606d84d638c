"""Learning-rate policies, gradient energy and path budget functions."""

from adaregret.scheduler.budgets import (
    ConstantBudget,
    LinearBudget,
    PathBudgetFunction,
    SqrtBudget,
)
from adaregret.scheduler.doubling import DoublingSegment, doubling_schedule
from adaregret.scheduler.energy import GradientEnergy, update_energy
from adaregret.scheduler.policies import (
    Adaptive,
    ConstantOracle,
    DoublingReset,
    PerCoordinate,
    RatePolicy,
    ScalarRatePolicy,
)
from adaregret.scheduler.rates import (
    CoordinateRates,
    rate_adaptive,
    rate_constant_oracle,
    rate_per_coordinate,
)

__all__ = [
    "Adaptive",
    "ConstantBudget",
    "ConstantOracle",
    "CoordinateRates",
    "DoublingReset",
    "DoublingSegment",
    "GradientEnergy",
    "LinearBudget",
    "PathBudgetFunction",
    "PerCoordinate",
    "RatePolicy",
    "ScalarRatePolicy",
    "SqrtBudget",
    "doubling_schedule",
    "rate_adaptive",
    "rate_constant_oracle",
    "rate_per_coordinate",
    "update_energy",
]
