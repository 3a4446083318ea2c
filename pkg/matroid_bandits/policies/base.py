"""
Shared policy state and interface for matroid-bandits.

Every policy keeps per-item empirical means and pull counts, chooses one
basis per episode, and learns only from semi-bandit feedback.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np
import structlog

from ..core.errors import ContractViolation, FeedbackMismatch
from ..matroids.base import ItemSet, Matroid

logger = structlog.get_logger(__name__)


def _log_clamped(t: float) -> float:
    return math.log(t) if t > 1 else 0.0


def confidence_radius(t: float, s: int) -> float:
    """c_{t,s} = sqrt(2 ln(t) / s), with ln clamped at 0 for t in {0, 1}."""
    if s < 1:
        raise ContractViolation(f"Pull count must be at least 1, got {s}")
    return math.sqrt(2.0 * _log_clamped(t) / s)


def confidence_radii(t: float, counts: np.ndarray) -> np.ndarray:
    """Vectorized confidence_radius over a count array."""
    if np.any(counts < 1):
        raise ContractViolation("Pull counts must be at least 1")
    return np.sqrt(2.0 * _log_clamped(t) / counts)


@dataclass
class BanditState:
    """Per-item pull counts T_e(t) and empirical means, plus the episode index."""

    counts: np.ndarray
    means: np.ndarray
    episode: int = 0

    @property
    def ground_set_size(self) -> int:
        return int(self.counts.size)

    def update(self, basis: Sequence[int], observed: Mapping[int, float]) -> "BanditState":
        """Fold one episode of semi-bandit feedback into the statistics."""
        if set(observed) != set(basis) or len(observed) != len(basis):
            raise FeedbackMismatch(
                f"Feedback covers items {sorted(observed)} but the basis is {sorted(basis)}"
            )
        for e in basis:
            old_count = self.counts[e]
            new_count = old_count + 1
            self.means[e] = (old_count * self.means[e] + observed[e]) / new_count
            self.counts[e] = new_count
        self.episode += 1
        return self

    def copy(self) -> "BanditState":
        return BanditState(self.counts.copy(), self.means.copy(), self.episode)


@dataclass
class PolicyDecision:
    """A chosen basis, in the order its items were picked."""

    basis: ItemSet
    ucb_values: Optional[np.ndarray] = None


def initialize_state(m: Matroid, w0: np.ndarray) -> BanditState:
    """Statistics after the full-observation draw w0: one pull per item."""
    w0 = np.asarray(w0, dtype=float)
    if w0.size != m.ground_set_size:
        raise ContractViolation(
            f"Initial draw has {w0.size} entries, expected {m.ground_set_size}"
        )
    return BanditState(
        counts=np.ones(m.ground_set_size, dtype=np.int64),
        means=w0.copy(),
        episode=0,
    )


class BasePolicy(ABC):
    """Base class for all per-episode policies."""

    name: str = ""

    def __init__(self, matroid: Matroid):
        self.matroid = matroid
        self.state: Optional[BanditState] = None
        self.logger = logger.bind(policy=self.label)

    @property
    def label(self) -> str:
        """Name written to traces."""
        return self.name

    def initialize(self, w0: np.ndarray) -> None:
        """Observe the initial full draw."""
        self.state = initialize_state(self.matroid, w0)

    def require_state(self) -> BanditState:
        if self.state is None:
            raise ContractViolation(f"Policy {self.label} used before initialization")
        return self.state

    @abstractmethod
    def select(self) -> PolicyDecision:
        """Choose the basis for the next episode."""

    def update(self, basis: Sequence[int], observed: Dict[int, float]) -> None:
        """Apply semi-bandit feedback for the chosen basis."""
        self.require_state().update(basis, observed)
