"""
Latency-driven weights.

The raw latency of item e is mu(e) - 1 + Exp(scale). Rewards are the affine
image 1 - latency / normalization clamped to [0, 1], so lower latency means
higher reward. The clamp makes the mean piecewise, so it is estimated once by
Monte Carlo and frozen with the environment.
"""

from typing import Any, Dict, Optional, Sequence

import numpy as np

from .base import WeightEnvironment, as_unit_vector
from ..core.errors import InputError

DEFAULT_MEAN_SAMPLES = 1_000_000
_CHUNK_CELLS = 4_000_000


class ClippedShiftedExponentialEnvironment(WeightEnvironment):
    """Rewards derived from exponentially perturbed latencies."""

    kind = "clipped_shifted_exponential"

    def __init__(self, latencies: Sequence[float], normalization: Optional[float] = None,
                 scale: float = 1.0, means: Optional[Sequence[float]] = None,
                 mean_samples: int = DEFAULT_MEAN_SAMPLES, mean_seed: int = 0):
        mu = np.asarray(latencies, dtype=float)
        if mu.ndim != 1 or mu.size == 0 or not np.all(np.isfinite(mu)):
            raise InputError("'latencies' must be a non-empty list of finite numbers")
        if np.any(mu < 0.0):
            raise InputError("'latencies' must be non-negative")
        super().__init__(mu.size)
        self.mu = mu
        self.scale = float(scale)
        if self.scale <= 0.0:
            raise InputError("'scale' must be positive")
        self.normalization = float(normalization) if normalization is not None else float(mu.max())
        if self.normalization <= 0.0:
            raise InputError("'normalization' must be positive")
        self.mean_samples = int(mean_samples)
        self.mean_seed = int(mean_seed)
        if means is not None:
            frozen = as_unit_vector(means, "means")
            if frozen.size != mu.size:
                raise InputError(f"'means' has {frozen.size} entries, expected {mu.size}")
            self._w_bar = frozen
        else:
            self._w_bar = self._estimate_mean()

    def rewards(self, noise: np.ndarray) -> np.ndarray:
        """Map exponential noise (one row per draw) to clamped rewards."""
        raw = self.mu - 1.0 + noise
        return np.clip(1.0 - raw / self.normalization, 0.0, 1.0)

    def draw_full(self, rng: np.random.Generator) -> np.ndarray:
        return self.rewards(rng.exponential(self.scale, self.ground_set_size))

    def _estimate_mean(self) -> np.ndarray:
        if self.mean_samples < 1:
            raise InputError("'mean_samples' must be positive")
        rng = np.random.default_rng(self.mean_seed)
        rows_per_chunk = max(1, _CHUNK_CELLS // self.ground_set_size)
        total = np.zeros(self.ground_set_size)
        remaining = self.mean_samples
        while remaining > 0:
            rows = min(rows_per_chunk, remaining)
            noise = rng.exponential(self.scale, (rows, self.ground_set_size))
            total += self.rewards(noise).sum(axis=0)
            remaining -= rows
        w_bar = total / self.mean_samples
        self.logger.debug("Mean estimated", samples=self.mean_samples, seed=self.mean_seed)
        return w_bar

    def _mean(self) -> np.ndarray:
        return self._w_bar

    def latency_of(self, rewards: np.ndarray) -> np.ndarray:
        """Invert the reward transform (exact away from the clamp)."""
        return self.normalization * (1.0 - np.asarray(rewards, dtype=float))

    def expected_cost(self, basis: Sequence[int]) -> Optional[float]:
        items = list(basis)
        return float(self.latency_of(self._w_bar[items]).sum()) if items else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "latencies": self.mu.tolist(),
            "normalization": self.normalization,
            "scale": self.scale,
            "mean_samples": self.mean_samples,
            "mean_seed": self.mean_seed,
            "means": self._w_bar.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ClippedShiftedExponentialEnvironment":
        if "latencies" not in data:
            raise InputError("Missing field 'latencies' for latency environment")
        return cls(
            data["latencies"],
            normalization=data.get("normalization"),
            scale=data.get("scale", 1.0),
            means=data.get("means"),
            mean_samples=data.get("mean_samples", DEFAULT_MEAN_SAMPLES),
            mean_seed=data.get("mean_seed", 0),
        )
