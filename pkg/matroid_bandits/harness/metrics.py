"""
Gap profiles and regret bounds.

Gaps compare every suboptimal item with the items of the optimal basis
sorted by descending mean. The bounds turn a gap profile (or just L, K and
the horizon) into regret envelopes for a given number of episodes.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..core.errors import DomainError
from ..matroids.base import ItemSet, Matroid
from ..policies.optimal import optimal_policy_select

# Constant of the per-pair term in the gap-dependent bound.
PAIR_CONSTANT = 4.0 / 3.0 * math.pi ** 2


@dataclass
class GapProfile:
    """Gaps between suboptimal items and the optimal basis.

    optimal lists A* by descending mean (ties by index); gaps[e][k] is
    w_bar(a*_k) - w_bar(e) and positive_sets[e] the indices k with a positive gap.
    """

    optimal: ItemSet
    w_bar: np.ndarray
    gaps: Dict[int, np.ndarray] = field(default_factory=dict)
    positive_sets: Dict[int, Tuple[int, ...]] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.optimal)

    @property
    def suboptimal(self) -> List[int]:
        return sorted(self.gaps)

    def k_e(self, e: int) -> int:
        """K_e = |O_e|."""
        return len(self.positive_sets[e])

    @property
    def delta_min(self) -> Optional[float]:
        """Smallest positive gap, or None when no suboptimal item has one."""
        values = [self.gaps[e][k] for e, ks in self.positive_sets.items() for k in ks]
        return float(min(values)) if values else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "optimal": list(self.optimal),
            "delta_min": self.delta_min,
            "k_e": {int(e): self.k_e(e) for e in self.suboptimal},
        }


def compute_gap_profile(m: Matroid, w_bar: np.ndarray) -> GapProfile:
    """Gaps of every suboptimal item against the optimal basis."""
    w_bar = np.asarray(w_bar, dtype=float)
    basis = optimal_policy_select(m, w_bar).basis
    optimal = tuple(sorted(basis, key=lambda e: (-w_bar[e], e)))
    optimal_means = w_bar[list(optimal)] if optimal else np.zeros(0)
    profile = GapProfile(optimal=optimal, w_bar=w_bar)
    members = set(optimal)
    for e in m.ground_set:
        if e in members:
            continue
        gaps = optimal_means - w_bar[e]
        profile.gaps[e] = gaps
        profile.positive_sets[e] = tuple(int(k) for k in np.flatnonzero(gaps > 0))
    return profile


def _log_horizon(n: float) -> float:
    if n < 1:
        raise DomainError(f"Horizon must be at least 1, got {n}")
    return math.log(n)


def compute_gap_dependent_bound(gp: GapProfile, n: float) -> float:
    """Gap-dependent upper bound on the expected cumulative regret of OMM.

    sum_e 16 / gap(e, K_e) * ln n + sum_e sum_{k <= K_e} gap(e, k) * 4/3 pi^2;
    items without a positive gap contribute nothing.
    """
    log_n = _log_horizon(n)
    total = 0.0
    for e in gp.suboptimal:
        positive = gp.positive_sets[e]
        if not positive:
            continue
        gaps = gp.gaps[e][list(positive)]
        total += 16.0 / float(gaps.min()) * log_n
        total += float(gaps.sum()) * PAIR_CONSTANT
    return total


def compute_gap_free_bound(L: int, K: int, n: float) -> float:
    """Gap-free bound 8 sqrt(K L n ln n) + 4/3 pi^2 K L."""
    if n < 2:
        raise DomainError(f"Gap-free bound needs n >= 2, got {n}")
    return 8.0 * math.sqrt(K * L * n * math.log(n)) + PAIR_CONSTANT * K * L


def lower_bound_slope(L: int, K: int, delta: float) -> float:
    """Asymptotic regret-per-log-episode of any consistent algorithm on the partition instance."""
    if not 0.0 < delta < 0.5:
        raise DomainError(f"delta must lie in (0, 0.5), got {delta}")
    return (L - K) / (4.0 * delta)


def compute_lower_bound(L: int, K: int, delta: float, n: float) -> float:
    """The asymptotic lower-bound curve (L - K) / (4 delta) * ln n."""
    return lower_bound_slope(L, K, delta) * _log_horizon(n)
