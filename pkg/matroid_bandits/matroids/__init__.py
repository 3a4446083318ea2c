"""Matroid families and independence oracles."""

from .base import IndependenceOracle, ItemSet, Matroid, as_item_set
from .uniform import UniformMatroid
from .partition import PartitionMatroid
from .graphic import GraphicMatroid, UnionFind
from .transversal import TransversalMatroid
from .linear import LinearMatroid, integer_rank
from .registry import MatroidRegistry, get_registry, matroid_from_dict

__all__ = [
    "IndependenceOracle",
    "ItemSet",
    "Matroid",
    "as_item_set",
    "UniformMatroid",
    "PartitionMatroid",
    "GraphicMatroid",
    "UnionFind",
    "TransversalMatroid",
    "LinearMatroid",
    "integer_rank",
    "MatroidRegistry",
    "get_registry",
    "matroid_from_dict",
]
