"""Exception hierarchy shared by every adaregret module."""

from typing import Any


class AdaRegretError(Exception):
    """Base class for all library errors."""


class InvalidInputError(AdaRegretError, ValueError):
    """Dimension mismatch, non-finite entries or out-of-range parameters."""


class OracleUndefinedError(AdaRegretError):
    """The constant oracle rate needs a positive total gradient energy."""


class RateUndefinedError(AdaRegretError):
    """An adaptive rate was requested while the gradient energy is still zero."""


class ContractViolationError(AdaRegretError, RuntimeError):
    """An internal guarantee was broken; indicates a bug, not bad input."""


class UnsupportedSetError(AdaRegretError, TypeError):
    """The operation needs a feasible set with a different structure."""


class PreconditionViolationError(AdaRegretError):
    """A bound was evaluated on data that does not meet its hypotheses."""


class InfeasibleBudgetError(AdaRegretError):
    """The requested comparator cannot be built within the path budget."""


class SizeLimitError(AdaRegretError):
    """An exhaustive search would exceed its configured size limit."""


class NumericalFailureError(AdaRegretError):
    """An iterative numerical routine did not converge."""

    def __init__(self, message: str, residual: float) -> None:
        super().__init__(f"{message} (residual={residual:.3e})")
        self.residual = residual


class StreamExhaustedError(AdaRegretError):
    """A loss stream was queried past its horizon."""


class MultiQueryError(AdaRegretError):
    """A second sub-gradient was requested for a round already observed."""


class TruncatedRunError(AdaRegretError):
    """A run stopped before its horizon; carries the records produced so far."""

    def __init__(self, message: str, records: list[Any]) -> None:
        super().__init__(message)
        self.records = records


class UsageError(AdaRegretError):
    """Invalid experiment configuration; one message per failing field."""

    def __init__(self, errors: list[str]) -> None:
        super().__init__("; ".join(errors) if errors else "invalid configuration")
        self.errors = errors
