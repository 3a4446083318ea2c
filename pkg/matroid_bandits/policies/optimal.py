"""The optimal policy: always the maximum-weight basis in expectation."""

import numpy as np

from .base import BasePolicy, PolicyDecision
from ..core.greedy import greedy_max_basis
from ..matroids.base import Matroid


def optimal_policy_select(m: Matroid, w_bar: np.ndarray) -> PolicyDecision:
    """A* = greedy basis on the true means."""
    return PolicyDecision(basis=greedy_max_basis(m, w_bar))


class OptimalPolicy(BasePolicy):
    """Simulator-only reference policy that knows the true means."""

    name = "optimal"

    def __init__(self, matroid: Matroid, w_bar: np.ndarray):
        super().__init__(matroid)
        self._decision = optimal_policy_select(matroid, w_bar)

    def select(self) -> PolicyDecision:
        self.require_state()
        return PolicyDecision(basis=self._decision.basis)
