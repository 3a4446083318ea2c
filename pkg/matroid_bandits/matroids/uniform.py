"""Uniform matroids: every set of at most k items is independent."""

from typing import Any, Dict

from .base import IndependenceOracle, ItemSet, Matroid, require_int
from ..core.errors import InputError


class _CardinalityOracle(IndependenceOracle):
    def can_add(self, item: int) -> bool:
        return len(self.items) < self.matroid.k

    def _commit(self, item: int) -> None:
        pass


class UniformMatroid(Matroid):
    """Uniform matroid U(k, L)."""

    family = "uniform"

    def __init__(self, ground_set_size: int, k: int):
        super().__init__(ground_set_size)
        if not isinstance(k, int) or isinstance(k, bool) or k < 0:
            raise InputError(f"Uniform matroid cap k must be a non-negative integer, got {k!r}")
        self.k = k

    def oracle(self) -> IndependenceOracle:
        return _CardinalityOracle(self)

    def _is_independent(self, items: ItemSet) -> bool:
        return len(items) <= self.k

    def family_data(self) -> Dict[str, Any]:
        return {"L": self.ground_set_size, "k": self.k}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "UniformMatroid":
        return cls(require_int(data, "L"), require_int(data, "k"))
