from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from src.models.domain.geometry import PointSet
from src.utilities.constants import ErrorMessages
from src.utilities.messages.exceptions.errors import MappingError


@dataclass(frozen=True)
class MultiMap:
    """
    A multivalued map F: A -> finite nonempty subsets of B, stored as index tuples.

    Attributes:
        images (tuple[tuple[int, ...], ...]): images[i] lists the B-indices of F(A[i]),
            without repeats and in the order they were given.
    """

    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for i, image in enumerate(self.images):
            if not image:
                raise MappingError(ErrorMessages.EMPTY_IMAGE.value.format(i))

    @classmethod
    def from_lists(cls, images: Sequence[Sequence[int]]) -> "MultiMap":
        return cls(tuple(tuple(dict.fromkeys(int(j) for j in image)) for image in images))

    @classmethod
    def singletons(cls, targets: Sequence[int]) -> "MultiMap":
        """Wrap a single-valued map A -> B as the multivalued map x -> {f(x)}."""
        return cls(tuple((int(j),) for j in targets))

    def __len__(self) -> int:
        return len(self.images)

    def image(self, index: int) -> tuple[int, ...]:
        return self.images[index]

    def image_set(self, index: int, B: PointSet) -> PointSet:
        return B.subset(self.images[index], label=f"F({index})")

    def check_against(self, n_a: int, n_b: int) -> None:
        """
        Verify the map is total on A and every image index exists in B.

        Raises:
            MappingError: Naming the first offending entry.
        """
        if len(self.images) != n_a:
            raise MappingError(ErrorMessages.MAP_NOT_TOTAL.value.format(len(self.images), n_a))
        for i, image in enumerate(self.images):
            for j in image:
                if not 0 <= j < n_b:
                    raise MappingError(ErrorMessages.IMAGE_INDEX.value.format(i, j, n_b))


class AlphaKind(str, Enum):
    CONSTANT = "CONSTANT"
    TABLE = "TABLE"


@dataclass(frozen=True, eq=False)
class AlphaMap:
    """
    The gate alpha: A x A -> [0, inf), either a constant or a table over A-indices.
    """

    kind: AlphaKind
    constant: float = 1.0
    table: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.kind is AlphaKind.TABLE:
            table = np.asarray(self.table, dtype=float)
            if table.ndim != 2 or table.shape[0] != table.shape[1]:
                size = table.shape[0] if table.ndim else 0
                raise MappingError(ErrorMessages.ALPHA_SHAPE.value.format(size, table.shape))
            if not np.isfinite(table).all() or (table < 0).any():
                raise MappingError(ErrorMessages.ALPHA_NEGATIVE.value)
            table.setflags(write=False)
            object.__setattr__(self, "table", table)
        elif not np.isfinite(self.constant) or self.constant < 0:
            raise MappingError(ErrorMessages.ALPHA_NEGATIVE.value)

    @classmethod
    def constant_map(cls, value: float) -> "AlphaMap":
        return cls(AlphaKind.CONSTANT, constant=float(value))

    @classmethod
    def from_table(cls, table) -> "AlphaMap":
        return cls(AlphaKind.TABLE, table=np.asarray(table, dtype=float))

    def __call__(self, i: int, j: int) -> float:
        if self.kind is AlphaKind.CONSTANT:
            return self.constant
        return float(self.table[i, j])

    def matrix(self, n: int) -> np.ndarray:
        if self.kind is AlphaKind.CONSTANT:
            return np.full((n, n), self.constant)
        self.check_size(n)
        return np.array(self.table)

    def check_size(self, n: int) -> None:
        if self.kind is AlphaKind.TABLE and self.table.shape[0] != n:
            raise MappingError(ErrorMessages.ALPHA_SHAPE.value.format(n, self.table.shape))

    def describe(self) -> str:
        if self.kind is AlphaKind.CONSTANT:
            return f"constant {self.constant:g}"
        return f"table {self.table.shape[0]}x{self.table.shape[0]}"
