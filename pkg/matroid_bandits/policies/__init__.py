"""Per-episode policies: OMM, epsilon-greedy and the optimal oracle."""

from typing import Any, Dict, Tuple, Union

import numpy as np

from .base import (
    BanditState,
    BasePolicy,
    PolicyDecision,
    confidence_radii,
    confidence_radius,
    initialize_state,
)
from .omm import OMMPolicy, omm_initialize, omm_select, omm_update, ucb_values
from .epsilon_greedy import DEFAULT_EPSILON, EpsilonGreedyPolicy, epsilon_greedy_select
from .optimal import OptimalPolicy, optimal_policy_select
from ..core.errors import InputError
from ..matroids.base import Matroid

PolicySpec = Union[str, Dict[str, Any]]

POLICY_NAMES = ("omm", "epsilon_greedy", "optimal")


def parse_policy_spec(spec: PolicySpec) -> Tuple[str, Dict[str, Any]]:
    """Split 'omm' or {'epsilon_greedy': {'epsilon': 0.1}} into name and options."""
    if isinstance(spec, str):
        name, options = spec, {}
    elif isinstance(spec, dict) and len(spec) == 1:
        name, options = next(iter(spec.items()))
        options = dict(options or {})
    else:
        raise InputError(f"Policy must be a name or a single-key mapping, got {spec!r}")
    if name not in POLICY_NAMES:
        raise InputError(f"Unknown policy '{name}'; available: {', '.join(POLICY_NAMES)}")
    if name == "epsilon_greedy":
        unknown = set(options) - {"epsilon"}
        if unknown:
            raise InputError(f"Unknown epsilon_greedy options: {', '.join(sorted(unknown))}")
        epsilon = options.get("epsilon", DEFAULT_EPSILON)
        if not isinstance(epsilon, (int, float)) or not 0.0 <= epsilon <= 1.0:
            raise InputError(f"epsilon must lie in [0, 1], got {epsilon!r}")
        options = {"epsilon": float(epsilon)}
    elif options:
        raise InputError(f"Policy '{name}' takes no options")
    return name, options


def create_policy(spec: PolicySpec, matroid: Matroid, w_bar: np.ndarray,
                  rng: np.random.Generator) -> BasePolicy:
    """Instantiate a policy; only the optimal policy ever sees w_bar."""
    name, options = parse_policy_spec(spec)
    if name == "omm":
        return OMMPolicy(matroid)
    if name == "epsilon_greedy":
        return EpsilonGreedyPolicy(matroid, rng, **options)
    return OptimalPolicy(matroid, w_bar)


__all__ = [
    "BanditState",
    "BasePolicy",
    "PolicyDecision",
    "confidence_radius",
    "confidence_radii",
    "initialize_state",
    "OMMPolicy",
    "omm_initialize",
    "omm_select",
    "omm_update",
    "ucb_values",
    "EpsilonGreedyPolicy",
    "epsilon_greedy_select",
    "DEFAULT_EPSILON",
    "OptimalPolicy",
    "optimal_policy_select",
    "parse_policy_spec",
    "create_policy",
    "POLICY_NAMES",
]
