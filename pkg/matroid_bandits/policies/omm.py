"""
Optimistic matroid maximization (OMM).

Each episode runs the greedy maximum-weight basis method on upper confidence
bounds U_t(e) = mean(e) + c_{t-1, T_e(t-1)} instead of the unknown means.
"""

from typing import Mapping, Sequence

import numpy as np

from .base import BanditState, BasePolicy, PolicyDecision, confidence_radii, initialize_state
from ..core.errors import ContractViolation
from ..core.greedy import greedy_max_basis
from ..matroids.base import Matroid


def omm_initialize(m: Matroid, w0: np.ndarray) -> BanditState:
    """State after the full-observation draw."""
    return initialize_state(m, w0)


def ucb_values(st: BanditState) -> np.ndarray:
    """U_t for the episode t = st.episode + 1."""
    return st.means + confidence_radii(st.episode, st.counts)


def omm_select(m: Matroid, st: BanditState) -> PolicyDecision:
    """Greedy basis on the current upper confidence bounds."""
    if st is None:
        raise ContractViolation("OMM state used before initialization")
    ucb = ucb_values(st)
    return PolicyDecision(basis=greedy_max_basis(m, ucb), ucb_values=ucb)


def omm_update(st: BanditState, basis: Sequence[int],
               observed: Mapping[int, float]) -> BanditState:
    """Incremental-mean update for the items of the chosen basis."""
    return st.update(basis, observed)


class OMMPolicy(BasePolicy):
    """UCB-driven greedy policy."""

    name = "omm"

    def select(self) -> PolicyDecision:
        return omm_select(self.matroid, self.require_state())
