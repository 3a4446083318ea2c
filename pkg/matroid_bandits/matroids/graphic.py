"""
Graphic matroids.

Items are the edges of a (multi)graph; a set of edges is independent when it
contains no cycle. Self-loops are cycles on their own and never independent.
"""

from numbers import Integral
from typing import Any, Dict, List, Sequence, Tuple

from .base import IndependenceOracle, ItemSet, Matroid, require_int, require_sequence
from ..core.errors import InputError


class UnionFind:
    """Disjoint sets over vertices 0..n-1 with path compression and union by size."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.size = [1] * size

    def find(self, k: int) -> int:
        # Find the root.
        root = k
        while root != self.parent[root]:
            root = self.parent[root]

        # Path compression.
        node = k
        while node != root:
            self.parent[node], node = root, self.parent[node]

        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of a and b; False when they were already joined."""
        root_a, root_b = self.find(a), self.find(b)
        if root_a == root_b:
            return False
        if self.size[root_a] < self.size[root_b]:
            root_a, root_b = root_b, root_a
        self.parent[root_b] = root_a
        self.size[root_a] += self.size[root_b]
        return True


class _ForestOracle(IndependenceOracle):
    def __init__(self, matroid: "GraphicMatroid"):
        super().__init__(matroid)
        self.components = UnionFind(matroid.vertex_count)

    def can_add(self, item: int) -> bool:
        u, v = self.matroid.edges[item]
        return u != v and self.components.find(u) != self.components.find(v)

    def _commit(self, item: int) -> None:
        u, v = self.matroid.edges[item]
        self.components.union(u, v)


class GraphicMatroid(Matroid):
    """Cycle matroid of a multigraph."""

    family = "graphic"

    def __init__(self, vertex_count: int, edges: Sequence[Tuple[int, int]]):
        super().__init__(len(edges))
        if vertex_count < 1:
            raise InputError(f"Vertex count must be positive, got {vertex_count}")
        normalized: List[Tuple[int, int]] = []
        for index, edge in enumerate(edges):
            if isinstance(edge, (str, bytes)) or not hasattr(edge, "__len__") or len(edge) != 2:
                raise InputError(f"Edge {index} must be a vertex pair, got {edge!r}")
            if any(isinstance(x, bool) or not isinstance(x, Integral) for x in edge):
                raise InputError(f"Edge {index} must join integer vertices, got {edge!r}")
            u, v = int(edge[0]), int(edge[1])
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InputError(
                    f"Edge {index} ({u}, {v}) references a vertex outside 0..{vertex_count - 1}"
                )
            normalized.append((u, v))
        self.vertex_count = int(vertex_count)
        self.edges = tuple(normalized)

    def oracle(self) -> IndependenceOracle:
        return _ForestOracle(self)

    def _is_independent(self, items: ItemSet) -> bool:
        components = UnionFind(self.vertex_count)
        for item in items:
            u, v = self.edges[item]
            if not components.union(u, v):
                return False
        return True

    def family_data(self) -> Dict[str, Any]:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "GraphicMatroid":
        return cls(require_int(data, "vertices"), require_sequence(data, "edges"))
