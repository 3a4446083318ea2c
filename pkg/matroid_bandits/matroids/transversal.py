"""
Transversal matroids.

Items are the left vertices of a bipartite graph; a set is independent when
some matching saturates all of it. The incremental oracle keeps a matching
and runs a single augmenting-path search per query.
"""

from collections import deque
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from .base import IndependenceOracle, ItemSet, Matroid, require_int, require_sequence
from ..core.errors import InputError


def max_matching_size(lefts: Sequence[int], adjacency: Sequence[FrozenSet[int]],
                      right_count: int) -> int:
    """Size of a maximum matching of lefts into 0..right_count-1 (Kuhn's algorithm)."""
    # matching[r] = left matched to right vertex r
    matching: List[Optional[int]] = [None] * right_count

    def search(x: int, seen: List[bool]) -> bool:
        for r in sorted(adjacency[x]):
            if not seen[r]:
                seen[r] = True
                if matching[r] is None or search(matching[r], seen):
                    matching[r] = x
                    return True
        return False

    return sum(1 for x in lefts if search(x, [False] * right_count))


class _MatchingOracle(IndependenceOracle):
    def __init__(self, matroid: "TransversalMatroid"):
        super().__init__(matroid)
        self.right_match: List[Optional[int]] = [None] * matroid.right_count
        self.left_match: Dict[int, int] = {}

    def _augmenting_path(self, item: int) -> Optional[List[Tuple[int, int]]]:
        """(left, right) pairs to flip so that item becomes matched, or None."""
        adjacency = self.matroid.adjacency
        parent: Dict[int, int] = {}
        queue = deque([item])
        while queue:
            left = queue.popleft()
            for right in sorted(adjacency[left]):
                if right in parent:
                    continue
                parent[right] = left
                owner = self.right_match[right]
                if owner is None:
                    path = []
                    while True:
                        l = parent[right]
                        path.append((l, right))
                        if l == item:
                            return path
                        right = self.left_match[l]
                queue.append(owner)
        return None

    def can_add(self, item: int) -> bool:
        return self._augmenting_path(item) is not None

    def _commit(self, item: int) -> None:
        for left, right in self._augmenting_path(item):
            self.right_match[right] = left
            self.left_match[left] = right


class TransversalMatroid(Matroid):
    """Transversal matroid of a bipartite graph, ground set = left vertices."""

    family = "transversal"

    def __init__(self, right_count: int, adjacency: Sequence[Sequence[int]]):
        super().__init__(len(adjacency))
        if right_count < 0:
            raise InputError(f"Right vertex count must be non-negative, got {right_count}")
        neighbours = []
        for item, rights in enumerate(adjacency):
            row = frozenset(int(r) for r in rights)
            if any(r < 0 or r >= right_count for r in row):
                raise InputError(
                    f"Item {item} is adjacent to a right vertex outside 0..{right_count - 1}"
                )
            neighbours.append(row)
        self.right_count = int(right_count)
        self.adjacency = tuple(neighbours)

    def oracle(self) -> IndependenceOracle:
        return _MatchingOracle(self)

    def _is_independent(self, items: ItemSet) -> bool:
        return max_matching_size(items, self.adjacency, self.right_count) == len(items)

    def family_data(self) -> Dict[str, Any]:
        return {"right": self.right_count, "adjacency": [sorted(a) for a in self.adjacency]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TransversalMatroid":
        return cls(require_int(data, "right"), require_sequence(data, "adjacency"))
