"""
Sparse Z2 boundary matrix in filtration order.

Columns ``0..b-1`` are the (zero) vertex columns, column ``b + k`` is edge
``k`` of the filtered complex. A column is a sorted tuple of row indices.
"""

import json
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from ..filtration import FilteredComplex

Column = Tuple[int, ...]


def add_columns(target: Column, origin: Column) -> Column:
    """Z2 sum of two sorted columns."""
    return tuple(sorted(set(target).symmetric_difference(origin)))


@dataclass
class ReductionMatrix:
    columns: List[Column]
    vertex_count: int

    @classmethod
    def from_complex(cls, complex_: FilteredComplex) -> "ReductionMatrix":
        """Boundary matrix of the filtered 1-skeleton."""
        columns: List[Column] = [() for _ in range(complex_.vertex_count)]
        columns.extend((edge.i, edge.j) for edge in complex_.edges)
        return cls(columns=columns, vertex_count=complex_.vertex_count)

    @classmethod
    def from_columns(
        cls, columns: Sequence[Sequence[int]], vertex_count: int
    ) -> "ReductionMatrix":
        return cls([tuple(sorted(column)) for column in columns], vertex_count)

    def __len__(self) -> int:
        return len(self.columns)

    def copy(self) -> "ReductionMatrix":
        return ReductionMatrix(list(self.columns), self.vertex_count)

    def low(self, j: int) -> int:
        """Row index of the lowest nonzero entry of column ``j``, -1 if zero."""
        column = self.columns[j]
        return column[-1] if column else -1

    def lows(self) -> List[int]:
        return [column[-1] if column else -1 for column in self.columns]

    def add_column(self, target: int, origin: int) -> None:
        """Replace column ``target`` by ``target + origin`` over Z2."""
        self.columns[target] = add_columns(self.columns[target], self.columns[origin])

    def is_reduced(self) -> bool:
        """No two nonzero columns share a low."""
        seen: Dict[int, int] = {}
        for j, low in enumerate(self.lows()):
            if low < 0:
                continue
            if low in seen:
                return False
            seen[low] = j
        return True

    def low_pairs(self) -> List[Tuple[int, int]]:
        """``(low(j), j)`` for every nonzero column ``j``."""
        return [(low, j) for j, low in enumerate(self.lows()) if low >= 0]

    def to_json(self) -> str:
        payload = {
            "vertex_count": self.vertex_count,
            "columns": [list(column) for column in self.columns],
        }
        return json.dumps(payload)
