"""
Base matroid abstractions for matroid-bandits.

This module defines the Matroid interface (ground set, independence oracle,
rank) and the incremental IndependenceOracle that every family implements.
"""

from abc import ABC, abstractmethod
from numbers import Integral
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple
import structlog

from ..core.errors import ContractViolation, InputError

logger = structlog.get_logger(__name__)

# Ordered tuple of distinct item indices in [0, L).
ItemSet = Tuple[int, ...]


def as_item_set(items: Iterable[int], ground_set_size: int) -> ItemSet:
    """Validate and normalize an iterable of item indices."""
    result: List[int] = []
    seen = set()
    for raw in items:
        try:
            item = int(raw)
        except (TypeError, ValueError):
            raise InputError(f"Item index is not an integer: {raw!r}")
        if item != raw:
            raise InputError(f"Item index is not an integer: {raw!r}")
        if item < 0 or item >= ground_set_size:
            raise InputError(
                f"Item index {item} out of range for ground set of size {ground_set_size}"
            )
        if item in seen:
            raise InputError(f"Duplicate item index {item}")
        seen.add(item)
        result.append(item)
    return tuple(result)


class IndependenceOracle(ABC):
    """Incremental independence state for a single growing independent set.

    Oracles are cheap, mutable and owned by one caller (one greedy pass, one
    simulation step); the matroid that creates them stays immutable.
    """

    def __init__(self, matroid: "Matroid"):
        self.matroid = matroid
        self.items: List[int] = []
        self._members = set()

    @abstractmethod
    def can_add(self, item: int) -> bool:
        """Return True if the current set plus item is independent."""

    @abstractmethod
    def _commit(self, item: int) -> None:
        """Update the incremental state after item was accepted."""

    def add(self, item: int) -> None:
        """Add item to the set; it must keep the set independent."""
        if item in self._members or not self.can_add(item):
            raise ContractViolation(f"Adding item {item} would make the set dependent")
        self._commit(item)
        self.items.append(item)
        self._members.add(item)

    def try_add(self, item: int) -> bool:
        """Add item if it keeps the set independent; report whether it did."""
        if item in self._members or not self.can_add(item):
            return False
        self._commit(item)
        self.items.append(item)
        self._members.add(item)
        return True

    def addable(self, candidates: Optional[Iterable[int]] = None) -> List[int]:
        """Items outside the current set that can be added, E(X) in ascending order."""
        pool = range(self.matroid.ground_set_size) if candidates is None else candidates
        return [e for e in pool if e not in self._members and self.can_add(e)]

    def __contains__(self, item: int) -> bool:
        return item in self._members

    def __len__(self) -> int:
        return len(self.items)


class Matroid(ABC):
    """Base class for all matroid families.

    Subclasses provide a from-scratch independence check and an incremental
    oracle; both must agree on every set.
    """

    family: str = ""

    def __init__(self, ground_set_size: int):
        if not isinstance(ground_set_size, int) or isinstance(ground_set_size, bool):
            raise InputError(f"Ground set size must be an integer, got {ground_set_size!r}")
        if ground_set_size < 1:
            raise InputError(f"Ground set size must be positive, got {ground_set_size}")
        self.ground_set_size = ground_set_size
        self._rank: Optional[int] = None
        self.logger = logger.bind(family=self.family, ground_set_size=ground_set_size)

    @abstractmethod
    def oracle(self) -> IndependenceOracle:
        """Create a fresh incremental oracle for the empty set."""

    @abstractmethod
    def _is_independent(self, items: ItemSet) -> bool:
        """From-scratch independence check for validated items."""

    @abstractmethod
    def family_data(self) -> Dict[str, Any]:
        """Family-specific fields, as accepted by from_dict."""

    @classmethod
    @abstractmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Matroid":
        """Build the matroid from its family fields."""

    @property
    def ground_set(self) -> range:
        return range(self.ground_set_size)

    def items(self, s: Iterable[int]) -> ItemSet:
        """Validate an item set against this ground set."""
        return as_item_set(s, self.ground_set_size)

    def is_independent(self, s: Iterable[int]) -> bool:
        """Decide whether s is independent."""
        return self._is_independent(self.items(s))

    def oracle_for(self, s: Iterable[int]) -> IndependenceOracle:
        """Build an oracle holding s; s must be independent."""
        oracle = self.oracle()
        for item in self.items(s):
            if not oracle.try_add(item):
                raise ContractViolation(f"Set {tuple(s)} is not independent")
        return oracle

    def can_extend(self, s: Iterable[int], e: int) -> bool:
        """Decide whether s + e is independent, for independent s and e outside s."""
        items = self.items(s)
        (item,) = self.items([e])
        if item in items:
            raise ContractViolation(f"Item {item} already belongs to the set")
        return self.oracle_for(items).can_add(item)

    def rank(self) -> int:
        """Cardinality K of every basis."""
        if self._rank is None:
            self._rank = self.rank_of(self.ground_set)
        return self._rank

    def rank_of(self, s: Iterable[int]) -> int:
        """Size of a maximal independent subset of s."""
        oracle = self.oracle()
        for item in self.items(s):
            oracle.try_add(item)
        return len(oracle)

    def is_basis(self, s: Iterable[int]) -> bool:
        """Decide whether s is a maximal independent set."""
        items = self.items(s)
        return len(items) == self.rank() and self._is_independent(items)

    def to_dict(self) -> Dict[str, Any]:
        """Serializable description, round-trips through the registry."""
        data = {"family": self.family}
        data.update(self.family_data())
        return data

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(L={self.ground_set_size})"


def require_sequence(data: Dict[str, Any], key: str) -> Sequence[Any]:
    """Fetch a required list field from family data."""
    if key not in data:
        raise InputError(f"Missing field '{key}'")
    value = data[key]
    if isinstance(value, (str, bytes)) or not hasattr(value, "__len__"):
        raise InputError(f"Field '{key}' must be a list")
    return value


def require_int(data: Dict[str, Any], key: str) -> int:
    """Fetch a required integer field from family data."""
    if key not in data:
        raise InputError(f"Missing field '{key}'")
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise InputError(f"Field '{key}' must be an integer, got {value!r}")
    return int(value)
