"""Loss streams, comparator constructors and brute-force comparator oracles."""

from adaregret.streams.base import LossStream, StreamSession, philox
from adaregret.streams.brute_force import brute_force_comparator, grid_points
from adaregret.streams.comparators import (
    SegmentedComparator,
    best_segmented_comparator,
    budgeted_comparator,
    equal_boundaries,
    max_segments,
)
from adaregret.streams.linear import (
    LinearFixed,
    LinearRademacher,
    ZeroPrefix,
    ZeroStream,
    gen_rademacher,
    rademacher_signs,
)
from adaregret.streams.regression import AbsoluteRegression, gen_regression

__all__ = [
    "AbsoluteRegression",
    "LinearFixed",
    "LinearRademacher",
    "LossStream",
    "SegmentedComparator",
    "StreamSession",
    "ZeroPrefix",
    "ZeroStream",
    "best_segmented_comparator",
    "brute_force_comparator",
    "budgeted_comparator",
    "equal_boundaries",
    "gen_rademacher",
    "gen_regression",
    "grid_points",
    "max_segments",
    "philox",
    "rademacher_signs",
]
