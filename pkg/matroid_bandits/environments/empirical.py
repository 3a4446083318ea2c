"""Weights resampled from recorded reward rows (one row per user, loan, ...)."""

from typing import Any, Dict, Sequence

import numpy as np

from .base import WeightEnvironment
from ..core.errors import InputError


class EmpiricalRowsEnvironment(WeightEnvironment):
    """Each episode picks one recorded row uniformly at random."""

    kind = "empirical_rows"

    def __init__(self, rows: Sequence[Sequence[float]]):
        matrix = np.asarray(rows, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] == 0 or matrix.shape[1] == 0:
            raise InputError("'rows' must be a non-empty N x L matrix")
        if not np.all(np.isfinite(matrix)) or np.any(matrix < 0.0) or np.any(matrix > 1.0):
            raise InputError("'rows' entries must be finite and lie in [0, 1]")
        super().__init__(matrix.shape[1])
        self.rows = matrix
        self._w_bar = matrix.mean(axis=0)

    def draw_full(self, rng: np.random.Generator) -> np.ndarray:
        return self.rows[rng.integers(self.rows.shape[0])].copy()

    def _mean(self) -> np.ndarray:
        return self._w_bar

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "rows": self.rows.tolist()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EmpiricalRowsEnvironment":
        if "rows" not in data:
            raise InputError("Missing field 'rows' for empirical environment")
        return cls(data["rows"])
