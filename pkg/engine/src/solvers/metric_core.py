"""
Distances over finite point sets: point-point, point-set, set-set and Hausdorff.

All functions are pure. Ties in every argmin/argmax go to the first point in the
declared order of the set, which keeps traces reproducible.
"""

import math
from typing import Sequence

import numpy as np
from scipy.spatial.distance import cdist

from src.config.settings.base import config_env
from src.models.domain.geometry import Metric, MetricKind, Point, PointSet
from src.utilities.constants import ErrorMessages
from src.utilities.messages.exceptions.errors import MetricError


def validate_metric_table(table, tol: float = 1e-12) -> np.ndarray:
    """
    Check a distance table against the metric axioms.

    Args:
        table: Square matrix of pairwise distances.
        tol (float): Slack allowed in the symmetry and triangle checks.

    Returns:
        np.ndarray: The table as a read-only float array.

    Raises:
        MetricError: Naming the violated axiom and the offending indices.
    """
    table = np.array(table, dtype=float)
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise MetricError(ErrorMessages.TABLE_NOT_SQUARE.value.format(table.shape))
    non_finite = np.argwhere(~np.isfinite(table))
    if non_finite.size:
        raise MetricError(ErrorMessages.TABLE_NON_FINITE.value.format(*non_finite[0]))
    negative = np.argwhere(table < 0)
    if negative.size:
        raise MetricError(ErrorMessages.TABLE_NEGATIVE.value.format(*negative[0]))
    diagonal = np.flatnonzero(np.abs(np.diag(table)) > tol)
    if diagonal.size:
        raise MetricError(ErrorMessages.TABLE_DIAGONAL.value.format(diagonal[0]))
    asymmetric = np.argwhere(np.abs(table - table.T) > tol)
    if asymmetric.size:
        raise MetricError(ErrorMessages.TABLE_ASYMMETRIC.value.format(*asymmetric[0]))
    off_diagonal = ~np.eye(table.shape[0], dtype=bool)
    collapsed = np.argwhere((table <= tol) & off_diagonal)
    if collapsed.size:
        raise MetricError(ErrorMessages.TABLE_INDISCERNIBLES.value.format(*collapsed[0]))
    # detour[i, j, k] = d(i, j) + d(j, k)
    detour = table[:, :, None] + table[None, :, :]
    broken = np.argwhere(table[:, None, :] > detour + tol)
    if broken.size:
        i, j, k = broken[0]
        raise MetricError(ErrorMessages.TABLE_TRIANGLE.value.format(i, j, k))
    table.setflags(write=False)
    return table


def _table_indices(coords: np.ndarray, metric: Metric) -> np.ndarray:
    size = metric.table.shape[0]
    indices = coords[:, 0].astype(int)
    bad = np.flatnonzero((coords.shape[1] != 1) | (indices != coords[:, 0]) | (indices < 0) | (indices >= size))
    if bad.size:
        raise MetricError(ErrorMessages.TABLE_INDEX.value.format(tuple(coords[bad[0]]), size))
    return indices


def pairwise_distances(P: np.ndarray, Q: np.ndarray, metric: Metric) -> np.ndarray:
    """
    Distance matrix between the rows of P and the rows of Q.

    Raises:
        MetricError: If the two arrays have different dimensions.
    """
    P = np.atleast_2d(np.asarray(P, dtype=float))
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    if P.shape[1] != Q.shape[1]:
        raise MetricError(ErrorMessages.DIMENSION_MISMATCH.value.format(P.shape[1], Q.shape[1]))
    if metric.kind is MetricKind.TABLE:
        return metric.table[np.ix_(_table_indices(P, metric), _table_indices(Q, metric))]
    return cdist(P, Q, metric.scipy_name)


def dist(p: Point, q: Point, metric: Metric) -> float:
    """
    Distance between two points.

    Args:
        p (Point): First point.
        q (Point): Second point.
        metric (Metric): The metric to use.

    Returns:
        float: d(p, q) >= 0.

    Raises:
        MetricError: On dimension mismatch.
    """
    return float(pairwise_distances([p], [q], metric)[0, 0])


def dist_point_set(p: Point, S: PointSet, metric: Metric) -> tuple[float, Point]:
    """
    D(p, S) = min over s in S of d(p, s), together with the first minimizing point.
    """
    row = pairwise_distances([p], S.coords, metric)[0]
    index = int(np.argmin(row))
    return float(row[index]), S[index]


def dist_set_set(A: PointSet, B: PointSet, metric: Metric) -> tuple[float, tuple[Point, Point]]:
    """
    dist(A, B) = min over all pairs, with the first attaining pair in row-major order.
    """
    matrix = pairwise_distances(A.coords, B.coords, metric)
    i, j = np.unravel_index(int(np.argmin(matrix)), matrix.shape)
    return float(matrix[i, j]), (A[i], B[j])


def directed_hausdorff(A: PointSet, B: PointSet, metric: Metric) -> tuple[float, Point]:
    """
    sup over a in A of D(a, B), together with the first point of A attaining it.
    """
    nearest = pairwise_distances(A.coords, B.coords, metric).min(axis=1)
    index = int(np.argmax(nearest))
    return float(nearest[index]), A[index]


def hausdorff(A: PointSet, B: PointSet, metric: Metric) -> float:
    matrix = pairwise_distances(A.coords, B.coords, metric)
    return float(max(matrix.min(axis=1).max(), matrix.min(axis=0).max()))


def sample_segment(start: Sequence[float], end: Sequence[float], step: float) -> list[Point]:
    """
    Sample the segment [start, end] with spacing at most `step`, both endpoints included.

    Args:
        start (Sequence[float]): First endpoint.
        end (Sequence[float]): Second endpoint.
        step (float): Maximum spacing between consecutive samples.

    Returns:
        list[Point]: ceil(length / step) + 1 points from start to end.

    Raises:
        MetricError: On a non-positive step or endpoints of different dimensions.
    """
    if not step > 0:
        raise MetricError(ErrorMessages.INVALID_STEP.value.format(step))
    start_arr = np.asarray(start, dtype=float)
    end_arr = np.asarray(end, dtype=float)
    if start_arr.shape != end_arr.shape:
        raise MetricError(ErrorMessages.DIMENSION_MISMATCH.value.format(start_arr.size, end_arr.size))
    length = float(np.linalg.norm(end_arr - start_arr))
    count = max(1, math.ceil(length / step - 1e-12))
    weights = np.linspace(0.0, 1.0, count + 1)
    samples = start_arr[None, :] + weights[:, None] * (end_arr - start_arr)[None, :]
    samples[-1] = end_arr
    # snap to the lattice the endpoints live on so that taxicab distances stay exact
    samples = np.where(np.abs(samples - np.round(samples)) < 1e-12, np.round(samples), samples)
    return [tuple(float(c) for c in row) for row in samples]


def build_point_set(points: Sequence[Sequence[float]], label: str, eps_dup: float = config_env.EPS_DUP) -> PointSet:
    """
    Build a PointSet keeping the first occurrence of points repeated within eps_dup.
    """
    kept: list[np.ndarray] = []
    for point in points:
        candidate = np.asarray(point, dtype=float)
        if kept and (np.max(np.abs(np.vstack(kept) - candidate), axis=1) <= eps_dup).any():
            continue
        kept.append(candidate)
    if not kept:
        raise MetricError(ErrorMessages.EMPTY_POINT_SET.value.format(label))
    return PointSet(np.vstack(kept), label=label, eps_dup=eps_dup)


def sets_equal(A: PointSet, B: PointSet, metric: Metric, eps: float = config_env.EPS_DUP) -> bool:
    return hausdorff(A, B, metric) <= eps
