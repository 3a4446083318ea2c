"""
Base weight environment for matroid-bandits.

An environment is a distribution P over weight vectors in [0, 1]^L with a
known mean vector. The mean is simulator-only knowledge: learning policies
see the initial full draw and per-episode semi-bandit feedback, nothing else.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Optional, Sequence

import numpy as np
import structlog

from ..core.errors import InputError

logger = structlog.get_logger(__name__)


def as_unit_vector(values: Sequence[float], name: str) -> np.ndarray:
    """Validate a finite vector with entries in [0, 1]."""
    if isinstance(values, (str, bytes)):
        raise InputError(f"'{name}' must be a non-empty list of numbers")
    try:
        array = np.asarray(values, dtype=float)
    except (TypeError, ValueError):
        raise InputError(f"'{name}' must be a non-empty list of numbers, got {values!r}")
    if array.ndim != 1 or array.size == 0:
        raise InputError(f"'{name}' must be a non-empty list of numbers")
    if not np.all(np.isfinite(array)):
        raise InputError(f"'{name}' contains non-finite entries")
    if np.any(array < 0.0) or np.any(array > 1.0):
        raise InputError(f"'{name}' entries must lie in [0, 1]")
    return array


class WeightEnvironment(ABC):
    """Stochastic i.i.d. weight environment."""

    kind: str = ""

    def __init__(self, ground_set_size: int):
        self.ground_set_size = ground_set_size
        self.logger = logger.bind(kind=self.kind, ground_set_size=ground_set_size)

    @abstractmethod
    def draw_full(self, rng: np.random.Generator) -> np.ndarray:
        """One realization w ~ P with every entry visible."""

    @abstractmethod
    def _mean(self) -> np.ndarray:
        """The mean vector w-bar (not copied)."""

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """Serializable description including any frozen mean estimate."""

    def mean_vector(self) -> np.ndarray:
        """Expected weights w-bar = E[w]."""
        return self._mean().copy()

    def feedback(self, w: np.ndarray, basis: Sequence[int]) -> Dict[int, float]:
        """Restriction of w to the items of basis (semi-bandit feedback)."""
        return {int(e): float(w[e]) for e in basis}

    def expected_cost(self, basis: Sequence[int]) -> Optional[float]:
        """Expected cost of a basis when rewards encode costs; None otherwise."""
        return None
