"""
Epsilon-greedy baseline.

The basis is built one item at a time. At each step, with probability
epsilon the next item is drawn uniformly from the addable items; otherwise
the addable item with the highest empirical mean is taken (ties by index).
"""

from typing import List, Set

import numpy as np

from .base import BanditState, BasePolicy, PolicyDecision
from ..core.errors import InputError
from ..core.greedy import greedy_order
from ..matroids.base import Matroid

DEFAULT_EPSILON = 0.1


def epsilon_greedy_select(m: Matroid, st: BanditState, epsilon: float,
                          rng: np.random.Generator) -> PolicyDecision:
    """Per-step exploration inside the greedy construction."""
    if not 0.0 <= epsilon <= 1.0:
        raise InputError(f"epsilon must lie in [0, 1], got {epsilon}")
    rank = m.rank()
    oracle = m.oracle()
    order = greedy_order(st.means)
    # Items that became dependent stay dependent as the set grows.
    dead: Set[int] = set()

    while len(oracle) < rank:
        if rng.random() < epsilon:
            addable: List[int] = []
            for e in m.ground_set:
                if e in oracle or e in dead:
                    continue
                if oracle.can_add(e):
                    addable.append(e)
                else:
                    dead.add(e)
            choice = addable[int(rng.integers(len(addable)))]
        else:
            choice = None
            for e in order:
                if e in oracle or e in dead:
                    continue
                if oracle.can_add(e):
                    choice = e
                    break
                dead.add(e)
        oracle.add(choice)

    return PolicyDecision(basis=tuple(oracle.items))


class EpsilonGreedyPolicy(BasePolicy):
    """Greedy on empirical means with per-step uniform exploration."""

    name = "epsilon_greedy"

    def __init__(self, matroid: Matroid, rng: np.random.Generator,
                 epsilon: float = DEFAULT_EPSILON):
        if not 0.0 <= epsilon <= 1.0:
            raise InputError(f"epsilon must lie in [0, 1], got {epsilon}")
        self.epsilon = float(epsilon)
        self.rng = rng
        super().__init__(matroid)

    @property
    def label(self) -> str:
        return f"epsilon_greedy[{self.epsilon:g}]"

    def select(self) -> PolicyDecision:
        return epsilon_greedy_select(self.matroid, self.require_state(), self.epsilon, self.rng)
