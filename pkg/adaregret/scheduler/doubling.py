"""Doubling-trick segment schedule."""

from typing import NamedTuple

from adaregret.errors import InvalidInputError
from adaregret.scheduler.budgets import PathBudgetFunction


class DoublingSegment(NamedTuple):
    """Segment k covers rounds start..end = 2^(k-1)..2^k - 1."""

    k: int
    start: int
    end: int
    budget: float | None


def doubling_schedule(t: int, budget_fn: PathBudgetFunction | None = None) -> DoublingSegment:
    """Locate round t; the segment budget is P(2^k - 1) when a budget function is given."""
    if t < 1:
        raise InvalidInputError(f"round index must be >= 1, got {t}")
    k = int(t).bit_length()
    start, end = 1 << (k - 1), (1 << k) - 1
    return DoublingSegment(k, start, end, None if budget_fn is None else budget_fn(end))
