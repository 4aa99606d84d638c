"""Convex feasible sets, Euclidean projection, diameters and path variation."""

import numpy as np

from adaregret.geometry.ball import Ball
from adaregret.geometry.base import FeasibleSet
from adaregret.geometry.box import Box
from adaregret.geometry.path import (
    ComparatorPath,
    coordinate_path_variation,
    max_segments,
    path_variation,
    prefix_variation,
)
from adaregret.geometry.vector import ArrayLike, as_matrix, as_vector, check_dimension


def project(feasible_set: FeasibleSet, point: ArrayLike) -> np.ndarray:
    """Unique Euclidean minimizer of ||point - v|| over the set."""
    vector = as_vector(point, name="point")
    check_dimension(vector, feasible_set.dimension, name="point")
    return feasible_set.project(vector)


def diameter(feasible_set: FeasibleSet) -> float:
    """Exact analytic diameter D."""
    return feasible_set.diameter()


def coordinate_diameters(feasible_set: FeasibleSet) -> np.ndarray:
    """Per-coordinate widths D_i."""
    return feasible_set.coordinate_diameters()


__all__ = [
    "ArrayLike",
    "Ball",
    "Box",
    "ComparatorPath",
    "FeasibleSet",
    "as_matrix",
    "as_vector",
    "check_dimension",
    "coordinate_diameters",
    "coordinate_path_variation",
    "diameter",
    "max_segments",
    "path_variation",
    "prefix_variation",
    "project",
]
