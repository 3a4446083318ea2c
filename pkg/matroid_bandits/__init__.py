"""
matroid-bandits - Learning to maximize modular functions on matroids

Semi-bandit learning of maximum-weight bases: optimistic greedy policies,
baselines, stochastic environments and a reproducible experiment harness.
"""

__version__ = "0.1.0"
__description__ = "Bandit learning of maximum-weight matroid bases"

from .core.config import RunConfig
from .core.greedy import construct_exchange_bijection, greedy_max_basis
from .matroids.registry import MatroidRegistry
from .policies import OMMPolicy, create_policy

__all__ = [
    "RunConfig",
    "MatroidRegistry",
    "greedy_max_basis",
    "construct_exchange_bijection",
    "OMMPolicy",
    "create_policy",
]
