"""
Greedy optimization over matroids.

This module finds maximum-weight bases greedily, provides an exhaustive
oracle for testing, and constructs the exchange bijection that pairs the
items of any basis with the items of an optimal one.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import structlog

from .errors import AxiomViolation, ContractViolation, EnumerationLimitExceeded, InputError
from ..matroids.base import ItemSet, Matroid

logger = structlog.get_logger(__name__)

# numpy arrays in the simulator; plain sequences of ints or Fractions keep
# arithmetic exact in tests.
WeightVector = Union[np.ndarray, Sequence[Any]]

BRUTE_FORCE_LIMIT = 20


def check_weights(w: WeightVector, ground_set_size: int) -> WeightVector:
    """Validate that w has one finite entry per item."""
    if len(w) != ground_set_size:
        raise InputError(f"Weight vector has {len(w)} entries, expected {ground_set_size}")
    if isinstance(w, np.ndarray):
        if not np.all(np.isfinite(w)):
            raise InputError("Weight vector contains non-finite entries")
    elif not all(math.isfinite(x) for x in w):
        raise InputError("Weight vector contains non-finite entries")
    return w


def evaluate_modular(s: Sequence[int], w: WeightVector) -> Any:
    """f(s, w): the sum of the weights of the items in s."""
    total = 0
    for e in s:
        total = total + w[e]
    return total


def greedy_order(w: WeightVector) -> List[int]:
    """Items by descending weight, ties by ascending index."""
    if isinstance(w, np.ndarray):
        return np.argsort(-w, kind="stable").tolist()
    return sorted(range(len(w)), key=lambda e: (-w[e], e))


def greedy_max_basis(m: Matroid, w: WeightVector) -> ItemSet:
    """Maximum-weight basis by the greedy method, in insertion order."""
    check_weights(w, m.ground_set_size)
    rank = m.rank()
    oracle = m.oracle()
    for e in greedy_order(w):
        if len(oracle) == rank:
            break
        oracle.try_add(e)
    return tuple(oracle.items)


def brute_force_max_basis(m: Matroid, w: WeightVector) -> Tuple[ItemSet, Any]:
    """Maximum-weight independent set by exhaustive enumeration.

    Ties are broken towards the lexicographically smallest sorted item list.
    """
    if m.ground_set_size > BRUTE_FORCE_LIMIT:
        raise EnumerationLimitExceeded(
            f"Refusing to enumerate 2^{m.ground_set_size} subsets "
            f"(limit is L <= {BRUTE_FORCE_LIMIT})"
        )
    check_weights(w, m.ground_set_size)

    best: List[Any] = [(), 0]

    def visit(current: List[int], start: int) -> None:
        for e in range(start, m.ground_set_size):
            candidate = current + [e]
            if not m.is_independent(candidate):
                continue
            value = evaluate_modular(candidate, w)
            if value > best[1] or (value == best[1] and tuple(candidate) < best[0]):
                best[0], best[1] = tuple(candidate), value
            visit(candidate, e + 1)

    visit([], 0)
    return best[0], best[1]


@dataclass(frozen=True)
class ExchangeBijection:
    """Pairing pi of positions in a chosen basis with positions in the optimal basis.

    pi[k] is the index in A* of the item paired with the k-th chosen item.
    """

    pi: Tuple[int, ...]

    def pairs(self, a_t: Sequence[int], a_star: Sequence[int]) -> List[Tuple[int, int]]:
        """(a^t_k, a*_pi(k)) for every position k."""
        return [(a_t[k], a_star[i]) for k, i in enumerate(self.pi)]

    def indicator(self, a_t: Sequence[int]) -> Dict[Tuple[int, int], int]:
        """The events 1_{e,k}: maps (item, optimal index) to 1 when e replaces a*_k."""
        return {(a_t[k], i): 1 for k, i in enumerate(self.pi)}

    def violations(self, m: Matroid, a_star: Sequence[int], a_t: Sequence[int]) -> List[str]:
        """Every way in which this pairing breaks its defining properties."""
        issues = []
        size = len(self.pi)
        if sorted(self.pi) != list(range(size)):
            issues.append(f"pi is not a permutation of 0..{size - 1}: {self.pi}")
            return issues
        for k, i in enumerate(self.pi):
            if not m.is_independent(list(a_t[:k]) + [a_star[i]]):
                issues.append(f"prefix of length {k} plus a*_{i} is dependent")
        star_index = {item: i for i, item in enumerate(a_star)}
        for k, item in enumerate(a_t):
            if item in star_index and self.pi[k] != star_index[item]:
                issues.append(f"shared item {item} at position {k} is not a fixed point")
        return issues


def construct_exchange_bijection(m: Matroid, a_star: Sequence[int],
                                 a_t: Sequence[int]) -> ExchangeBijection:
    """Exchange the items of a_t for items of a_star in backward order.

    At position k the chosen item is swapped for the smallest-index unpaired
    optimal item that keeps the working set independent; shared items are
    paired with themselves.
    """
    a_star = m.items(a_star)
    a_t = m.items(a_t)
    if not m.is_basis(a_star):
        raise ContractViolation(f"Optimal set {a_star} is not a basis")
    if not m.is_basis(a_t):
        raise ContractViolation(f"Chosen set {a_t} is not a basis")

    size = len(a_t)
    star_index = {item: i for i, item in enumerate(a_star)}
    working = list(a_t)
    paired = set()
    pi: List[Optional[int]] = [None] * size

    for k in range(size - 1, -1, -1):
        item = a_t[k]
        rest = working[:k] + working[k + 1:]
        if item in star_index:
            choice = star_index[item]
        else:
            occupied = set(rest)
            choice = None
            for i, candidate in enumerate(a_star):
                if i in paired or candidate in occupied:
                    continue
                if m.is_independent(rest + [candidate]):
                    choice = i
                    break
            if choice is None:
                raise AxiomViolation(
                    f"No optimal item can replace {item} at position {k}; "
                    "the independence oracle violates augmentation"
                )
        pi[k] = choice
        paired.add(choice)
        working[k] = a_star[choice]

    return ExchangeBijection(pi=tuple(pi))
