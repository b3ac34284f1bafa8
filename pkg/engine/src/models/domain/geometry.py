"""
Point sets and metrics of a finite instance.

Points are rows of a float array. Under the TABLE metric a point is a 1-tuple holding
an index into the distance table of an abstract finite space.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np
from scipy.spatial.distance import cdist

from src.config.settings.base import config_env
from src.utilities.constants import ErrorMessages
from src.utilities.messages.exceptions.errors import MetricError

Point = tuple[float, ...]


class MetricKind(str, Enum):
    L1 = "L1"
    L2 = "L2"
    LINF = "LINF"
    TABLE = "TABLE"


@dataclass(frozen=True, eq=False)
class Metric:
    """
    A metric on points of a fixed dimension.

    Attributes:
        kind (MetricKind): Which distance to use.
        table (Optional[np.ndarray]): Distance table, required for TABLE and validated
            against the metric axioms on construction.
    """

    kind: MetricKind
    table: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.kind is MetricKind.TABLE:
            from src.solvers.metric_core import validate_metric_table

            if self.table is None:
                raise MetricError(ErrorMessages.TABLE_MISSING.value)
            object.__setattr__(self, "table", validate_metric_table(self.table))

    @property
    def scipy_name(self) -> str:
        return {MetricKind.L1: "cityblock", MetricKind.L2: "euclidean", MetricKind.LINF: "chebyshev"}[self.kind]

    def describe(self) -> str:
        if self.kind is MetricKind.TABLE:
            return f"TABLE({self.table.shape[0]} points)"
        return self.kind.value


@dataclass(frozen=True, eq=False)
class PointSet:
    """
    A nonempty finite ordered set of points. The order breaks ties everywhere.

    Attributes:
        coords (np.ndarray): Array of shape (n, dim).
        label (str): Name used in reports and error messages.
        eps_dup (float): Two points closer than this in every coordinate are duplicates.
    """

    coords: np.ndarray
    label: str = "S"
    eps_dup: float = field(default=config_env.EPS_DUP, repr=False)

    def __post_init__(self):
        coords = np.atleast_2d(np.asarray(self.coords, dtype=float))
        if coords.size == 0:
            raise MetricError(ErrorMessages.EMPTY_POINT_SET.value.format(self.label))
        bad_rows = np.flatnonzero(~np.isfinite(coords).all(axis=1))
        if bad_rows.size:
            raise MetricError(ErrorMessages.NON_FINITE_POINT.value.format(self.label, int(bad_rows[0])))
        if len(coords) > 1:
            close = cdist(coords, coords, "chebyshev") <= self.eps_dup
            np.fill_diagonal(close, False)
            rows, cols = np.nonzero(np.triu(close))
            if rows.size:
                first, dup = int(rows[0]), int(cols[0])
                raise MetricError(
                    ErrorMessages.DUPLICATE_POINT.value.format(self.label, tuple(coords[dup]), dup, first)
                )
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    def __len__(self) -> int:
        return self.coords.shape[0]

    def __getitem__(self, index: int) -> Point:
        return tuple(float(c) for c in self.coords[index])

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    @property
    def points(self) -> tuple[Point, ...]:
        return tuple(self[i] for i in range(len(self)))

    def subset(self, indices, label: Optional[str] = None) -> "PointSet":
        return PointSet(self.coords[list(indices)], label=label or self.label, eps_dup=self.eps_dup)

    def index_of(self, point, tol: Optional[float] = None) -> Optional[int]:
        tol = self.eps_dup if tol is None else tol
        hits = np.flatnonzero(np.max(np.abs(self.coords - np.asarray(point, dtype=float)), axis=1) <= tol)
        return int(hits[0]) if hits.size else None
