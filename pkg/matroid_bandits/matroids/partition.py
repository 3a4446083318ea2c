"""
Partition matroids.

The ground set is split into blocks and a set is independent when it holds
at most capacity_of[b] items of every block b. Capacity one is the default.
"""

from numbers import Integral
from typing import Any, Dict, List, Optional, Sequence

from .base import IndependenceOracle, ItemSet, Matroid, require_sequence
from ..core.errors import InputError


class _BlockCountOracle(IndependenceOracle):
    def __init__(self, matroid: "PartitionMatroid"):
        super().__init__(matroid)
        self.counts = [0] * len(matroid.capacity_of)

    def can_add(self, item: int) -> bool:
        block = self.matroid.block_of[item]
        return self.counts[block] < self.matroid.capacity_of[block]

    def _commit(self, item: int) -> None:
        self.counts[self.matroid.block_of[item]] += 1


class PartitionMatroid(Matroid):
    """Partition matroid with per-block capacities."""

    family = "partition"

    def __init__(self, block_of: Sequence[int], capacity_of: Optional[Sequence[int]] = None):
        super().__init__(len(block_of))
        if any(isinstance(b, bool) or not isinstance(b, Integral) for b in block_of):
            raise InputError(f"Block indices must be integers, got {list(block_of)!r}")
        blocks = [int(b) for b in block_of]
        if any(b < 0 for b in blocks):
            raise InputError("Block indices must be non-negative")
        block_count = max(blocks) + 1
        if capacity_of is None:
            capacity_of = [1] * block_count
        if isinstance(capacity_of, (str, bytes)) or any(
                isinstance(c, bool) or not isinstance(c, Integral) for c in capacity_of):
            raise InputError(f"Block capacities must be integers, got {capacity_of!r}")
        capacities = [int(c) for c in capacity_of]
        if any(c < 0 for c in capacities):
            raise InputError("Block capacities must be non-negative")
        if block_count > len(capacities):
            raise InputError(
                f"Item refers to block {block_count - 1} but only "
                f"{len(capacities)} capacities were given"
            )
        self.block_of = tuple(blocks)
        self.capacity_of = tuple(capacities)

    @property
    def blocks(self) -> List[List[int]]:
        """Items of each block in ascending order."""
        members: List[List[int]] = [[] for _ in self.capacity_of]
        for item, block in enumerate(self.block_of):
            members[block].append(item)
        return members

    def oracle(self) -> IndependenceOracle:
        return _BlockCountOracle(self)

    def _is_independent(self, items: ItemSet) -> bool:
        counts = [0] * len(self.capacity_of)
        for item in items:
            counts[self.block_of[item]] += 1
        return all(c <= cap for c, cap in zip(counts, self.capacity_of))

    def family_data(self) -> Dict[str, Any]:
        return {"block_of": list(self.block_of), "capacity_of": list(self.capacity_of)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PartitionMatroid":
        return cls(require_sequence(data, "block_of"), data.get("capacity_of"))
