"""Array view of a list of step records."""

from dataclasses import dataclass

import numpy as np

from adaregret.errors import InvalidInputError
from adaregret.optimizer.state import StepKind, StepRecord


@dataclass(frozen=True, eq=False)
class Trace:
    """
    Stacked records. ``rates`` is (T,) for scalar policies and (T, N) for
    per-coordinate ones; skipped rounds hold NaN.
    """

    rounds: np.ndarray
    decisions: np.ndarray
    gradients: np.ndarray
    rates: np.ndarray
    energies: np.ndarray
    segments: np.ndarray
    kinds: tuple[StepKind, ...]
    dormant: np.ndarray | None

    @classmethod
    def from_records(cls, records: list[StepRecord]) -> "Trace":
        if not records:
            raise InvalidInputError("no records to stack")
        dimension = records[0].decision.size
        coordinate = any(r.dormant is not None for r in records)
        shape = (dimension,) if coordinate else ()
        rates = np.stack([
            np.full(shape, np.nan) if r.rate is None else np.broadcast_to(r.rate, shape)
            for r in records
        ]).astype(np.float64)
        dormant = None
        if coordinate:
            dormant = np.stack([
                np.ones(dimension, dtype=bool) if r.dormant is None else r.dormant for r in records
            ])
        return cls(
            rounds=np.array([r.round for r in records]),
            decisions=np.stack([r.decision for r in records]),
            gradients=np.stack([r.gradient for r in records]),
            rates=rates,
            energies=np.array([r.energy for r in records]),
            segments=np.array([r.segment for r in records]),
            kinds=tuple(r.kind for r in records),
            dormant=dormant,
        )

    @property
    def horizon(self) -> int:
        return self.rounds.size

    @property
    def gradient_norms(self) -> np.ndarray:
        return np.linalg.norm(self.gradients, axis=1)

    @property
    def first_active_round(self) -> int | None:
        """t0: first round with a nonzero gradient, or None."""
        nonzero = np.nonzero(self.gradient_norms > 0.0)[0]
        return int(nonzero[0]) + 1 if nonzero.size else None
