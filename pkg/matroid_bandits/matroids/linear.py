"""
Linear matroids over the rationals.

Items are integer column vectors; a set is independent when its columns are
linearly independent. All arithmetic is exact: fraction-free elimination on
Python integers, with every row divided by the gcd of its entries.
"""

from functools import reduce
from math import gcd
from numbers import Integral
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .base import IndependenceOracle, ItemSet, Matroid, require_int, require_sequence
from ..core.errors import InputError

Row = List[int]


def _normalize(row: Row) -> Row:
    g = reduce(gcd, row, 0)
    if g > 1:
        row = [x // g for x in row]
    return row


def _eliminate(row: Row, pivot_row: Row, pivot: int) -> Row:
    """Zero row[pivot] using pivot_row, keeping everything integral."""
    if row[pivot] == 0:
        return row
    g = gcd(pivot_row[pivot], row[pivot])
    alpha = row[pivot] // g
    beta = pivot_row[pivot] // g
    return _normalize([x * beta - p * alpha for x, p in zip(row, pivot_row)])


def integer_rank(vectors: Sequence[Sequence[int]]) -> int:
    """Exact rank of a list of integer vectors by fraction-free Gaussian elimination."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return 0
    columns = len(rows[0])
    rank = 0
    for column in range(columns):
        pivot_index = next((i for i in range(rank, len(rows)) if rows[i][column] != 0), None)
        if pivot_index is None:
            continue
        rows[rank], rows[pivot_index] = rows[pivot_index], rows[rank]
        for i in range(rank + 1, len(rows)):
            rows[i] = _eliminate(rows[i], rows[rank], column)
        rank += 1
        if rank == len(rows):
            break
    return rank


class _EchelonOracle(IndependenceOracle):
    def __init__(self, matroid: "LinearMatroid"):
        super().__init__(matroid)
        # Each stored row is zero at the pivots of all rows stored before it.
        self.basis: List[Tuple[int, Row]] = []

    def _reduce(self, item: int) -> Row:
        row = list(self.matroid.columns[item])
        for pivot, pivot_row in self.basis:
            row = _eliminate(row, pivot_row, pivot)
        return row

    def can_add(self, item: int) -> bool:
        return any(self._reduce(item))

    def _commit(self, item: int) -> None:
        row = self._reduce(item)
        pivot = next(i for i, x in enumerate(row) if x != 0)
        self.basis.append((pivot, row))


class LinearMatroid(Matroid):
    """Column matroid of an integer d x L matrix."""

    family = "linear"

    def __init__(self, dimension: int, columns: Sequence[Sequence[int]]):
        super().__init__(len(columns))
        if dimension < 1:
            raise InputError(f"Dimension must be positive, got {dimension}")
        parsed = []
        for item, column in enumerate(columns):
            if len(column) != dimension:
                raise InputError(
                    f"Column {item} has length {len(column)}, expected {dimension}"
                )
            if not all(isinstance(x, Integral) and not isinstance(x, bool) for x in column):
                raise InputError(f"Column {item} must contain integers only")
            parsed.append(tuple(int(x) for x in column))
        self.dimension = int(dimension)
        self.columns = tuple(parsed)

    def oracle(self) -> IndependenceOracle:
        return _EchelonOracle(self)

    def _is_independent(self, items: ItemSet) -> bool:
        if len(items) > self.dimension:
            return False
        return integer_rank([self.columns[i] for i in items]) == len(items)

    def family_data(self) -> Dict[str, Any]:
        return {"dimension": self.dimension, "columns": [list(c) for c in self.columns]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "LinearMatroid":
        return cls(require_int(data, "dimension"), require_sequence(data, "columns"))
