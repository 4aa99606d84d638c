"""Random instances of the energy versus trace-root comparison."""

import math
from dataclasses import dataclass

import numpy as np

from adaregret.analysis import GramAccumulator, trace_inequality
from adaregret.streams import philox

TRACE_COLUMNS = ("instance", "N", "T", "lhs", "rhs", "ratio", "sqrt_N")
DIMENSIONS = (2, 4, 8, 16)
MAX_ROUNDS = 100


@dataclass(frozen=True)
class TraceInstance:
    instance: int
    dimension: int
    rounds: int
    lhs: float
    rhs: float
    ratio: float

    @property
    def row(self) -> list:
        return [self.instance, self.dimension, self.rounds, self.lhs, self.rhs, self.ratio, math.sqrt(self.dimension)]


def random_gradients(instance: int, seed: int) -> np.ndarray:
    """Instance i: N cycles through 2, 4, 8, 16 and T is uniform on 1..100, drawn from seed + i."""
    rng = philox(seed + instance)
    dimension = DIMENSIONS[instance % len(DIMENSIONS)]
    rounds = int(rng.integers(1, MAX_ROUNDS + 1))
    scales = rng.exponential(size=(rounds, 1))
    return scales * rng.standard_normal((rounds, dimension))


def trace_study(instances: int, seed: int = 0) -> list[TraceInstance]:
    results = []
    for i in range(instances):
        gradients = random_gradients(i, seed)
        check = trace_inequality(GramAccumulator.from_gradients(gradients))
        results.append(
            TraceInstance(i, gradients.shape[1], gradients.shape[0], check.lhs, check.rhs, check.ratio)
        )
    return results
