"""Pytest configuration and fixtures for matroid-bandits tests."""

from typing import Dict

import numpy as np
import pytest
import yaml

from matroid_bandits.environments import BernoulliEnvironment
from matroid_bandits.matroids import (
    GraphicMatroid,
    IndependenceOracle,
    ItemSet,
    LinearMatroid,
    Matroid,
    PartitionMatroid,
    TransversalMatroid,
    UniformMatroid,
)


def small_matroids():
    """One small instance of every family, with loops and parallel items."""
    return [
        UniformMatroid(5, 3),
        PartitionMatroid([0, 0, 1, 1, 2, 2], [1, 2, 0]),
        GraphicMatroid(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 1)]),
        TransversalMatroid(3, [[0], [0, 1], [1, 2], [2], []]),
        LinearMatroid(3, [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [2, 2, 0], [0, 0, 0]]),
    ]


class _CheckEveryAdd(IndependenceOracle):
    def can_add(self, item: int) -> bool:
        return self.matroid.is_independent(self.items + [item])

    def _commit(self, item: int) -> None:
        pass


class NotAMatroid(Matroid):
    """Independent sets {}, singletons, {0, 1} and {2, 3}: augmentation fails."""

    def __init__(self):
        super().__init__(4)

    def oracle(self) -> IndependenceOracle:
        return _CheckEveryAdd(self)

    def _is_independent(self, items: ItemSet) -> bool:
        return len(items) <= 1 or set(items) in ({0, 1}, {2, 3})

    def family_data(self) -> Dict[str, object]:
        return {}

    @classmethod
    def from_dict(cls, data):
        return cls()


@pytest.fixture
def rng():
    """Seeded random generator."""
    return np.random.default_rng(12345)


@pytest.fixture
def triangle():
    """Cycle matroid of a triangle (rank 2)."""
    return GraphicMatroid(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def two_block_partition():
    """Blocks {0, 1} and {2, 3}, capacity one each."""
    return PartitionMatroid([0, 0, 1, 1])


@pytest.fixture
def all_families():
    return small_matroids()


@pytest.fixture
def two_item_env():
    return BernoulliEnvironment([0.9, 0.1])


@pytest.fixture
def two_item_config():
    """Config dict for a two-item, pick-one problem."""
    return {
        "name": "two-items",
        "matroid": {"family": "uniform", "L": 2, "k": 1},
        "environment": {"kind": "bernoulli", "means": [0.9, 0.1]},
        "policies": ["omm", {"epsilon_greedy": {"epsilon": 0.1}}, "optimal"],
        "horizon": 200,
        "seed": 3,
        "replications": 2,
    }


@pytest.fixture
def write_config(tmp_path):
    """Write a config dict as YAML and return its path."""

    def write(data, name="config.yaml"):
        path = tmp_path / name
        path.write_text(yaml.safe_dump(data, sort_keys=False), encoding="utf-8")
        return path

    return write
