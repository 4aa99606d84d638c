"""Exhaustive grid search for the worst in-class comparator on tiny instances."""

import logging
import math

import numpy as np

from adaregret.config import get_settings
from adaregret.errors import InvalidInputError, SizeLimitError
from adaregret.geometry.base import FeasibleSet
from adaregret.geometry.path import ComparatorPath
from adaregret.geometry.vector import as_matrix, check_dimension

logger = logging.getLogger(__name__)

MAX_DIMENSION = 2
MAX_HORIZON = 8
MAX_RESOLUTION = 21

# Keeps exact multiples of the unit from rounding up
_UNIT_SLACK = 1e-9


def grid_points(feasible_set: FeasibleSet, resolution: int) -> tuple[np.ndarray, float]:
    """Grid over the bounding box restricted to K, plus one cell diagonal."""
    lower, upper = feasible_set.bounding_box()
    axes = [np.linspace(lo, hi, resolution) for lo, hi in zip(lower, upper)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, feasible_set.dimension)
    slack = get_settings().membership_tolerance * feasible_set.diameter()
    inside = np.array([feasible_set.contains(p, slack) for p in mesh])
    points = feasible_set.project(mesh[inside])
    spacing = (upper - lower) / max(resolution - 1, 1)
    return points, float(np.linalg.norm(spacing))


def brute_force_comparator(
    gradients: np.ndarray,
    feasible_set: FeasibleSet,
    budget: float,
    grid_resolution: int = MAX_RESOLUTION,
) -> ComparatorPath:
    """
    Grid-valued path minimizing sum_t g_t^T w_t*, no worse than any grid path
    with variation <= P.

    A dynamic programme over (round, grid point, spent budget). Hops are
    rounded up to units of one cell diagonal / (T - 1), so rounding over a
    whole path stays within one cell diagonal and the returned path has
    variation <= P + one cell diagonal. It carries budget max(P, its variation).
    """
    gradients = as_matrix(gradients, name="gradients")
    check_dimension(gradients, feasible_set.dimension, name="gradients")
    horizon, dimension = gradients.shape
    if dimension > MAX_DIMENSION or horizon > MAX_HORIZON or grid_resolution > MAX_RESOLUTION:
        raise SizeLimitError(
            f"brute force supports N <= {MAX_DIMENSION}, T <= {MAX_HORIZON}, "
            f"resolution <= {MAX_RESOLUTION} (got N={dimension}, T={horizon}, resolution={grid_resolution})"
        )
    if grid_resolution < 2:
        raise InvalidInputError("grid resolution must be >= 2")
    if not (math.isfinite(budget) and budget >= 0.0):
        raise InvalidInputError(f"budget must be nonnegative, got {budget}")

    points, cell = grid_points(feasible_set, grid_resolution)
    m = points.shape[0]
    costs = gradients @ points.T  # (T, m)
    distances = np.linalg.norm(points[:, None, :] - points[None, :, :], axis=-1)
    unit = cell / max(horizon - 1, 1)
    hops = np.ceil(distances / unit - _UNIT_SLACK).astype(np.int64)
    longest = float(distances.max()) * (horizon - 1)
    capacity = math.floor((min(float(budget), longest) + cell) / unit + _UNIT_SLACK)

    greedy = np.argmin(costs, axis=1)
    if int(hops[greedy[:-1], greedy[1:]].sum()) <= capacity:
        logger.debug("Per-round grid minimizers fit the budget")
        return _finish(points[greedy], budget, feasible_set)

    max_states = get_settings().brute_force_max_states
    if m * (capacity + 1) > max_states:
        raise SizeLimitError(f"{m} grid points x {capacity + 1} budget units exceed {max_states} states")

    spend = np.arange(capacity + 1)
    # best[i, b]: cheapest prefix ending at grid point i with at most b units spent
    best = np.repeat(costs[0][:, None], capacity + 1, axis=1)
    parents = []
    for t in range(1, horizon):
        reached = np.full((m, capacity + 1), np.inf)
        parent = np.zeros((m, capacity + 1), dtype=np.int32)
        for i in range(m):
            before = spend[None, :] - hops[i][:, None]
            candidate = np.where(before >= 0, best[i][np.maximum(before, 0)], np.inf)
            better = candidate < reached
            reached[better] = candidate[better]
            parent[better] = i
        best = reached + costs[t][:, None]
        parents.append(parent)

    node = int(np.argmin(best[:, capacity]))
    left = capacity
    path = np.empty((horizon, dimension))
    path[-1] = points[node]
    for t in range(horizon - 1, 0, -1):
        previous = int(parents[t - 1][node, left])
        left -= int(hops[previous, node])
        node = previous
        path[t - 1] = points[node]
    logger.debug("Brute force over %d grid points, %d budget units: best cost %.6g", m, capacity, float(best.min()))
    return _finish(path, budget, feasible_set)


def _finish(path: np.ndarray, budget: float, feasible_set: FeasibleSet) -> ComparatorPath:
    horizon = path.shape[0]
    comparator_budget = max(float(budget), float(np.sum(np.linalg.norm(np.diff(path, axis=0), axis=1))))
    return ComparatorPath.build(path, min(comparator_budget, feasible_set.diameter() * (horizon - 1)), feasible_set)
