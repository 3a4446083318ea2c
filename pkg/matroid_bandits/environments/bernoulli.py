"""Independent Bernoulli weights."""

from typing import Any, Dict, Sequence

import numpy as np

from .base import WeightEnvironment, as_unit_vector


class BernoulliEnvironment(WeightEnvironment):
    """Each item pays 1 with probability p(e), independently."""

    kind = "bernoulli"

    def __init__(self, means: Sequence[float]):
        p = as_unit_vector(means, "means")
        super().__init__(p.size)
        self.p = p

    def draw_full(self, rng: np.random.Generator) -> np.ndarray:
        return (rng.random(self.ground_set_size) < self.p).astype(float)

    def _mean(self) -> np.ndarray:
        return self.p

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "means": self.p.tolist()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BernoulliEnvironment":
        return cls(data.get("means", []))
