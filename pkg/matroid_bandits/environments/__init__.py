"""Stochastic weight environments."""

from typing import Any, Dict, Optional

from .base import WeightEnvironment
from .bernoulli import BernoulliEnvironment
from .latency import ClippedShiftedExponentialEnvironment
from .empirical import EmpiricalRowsEnvironment
from ..core.errors import InputError, malformed_fields

ENVIRONMENT_KINDS = {
    cls.kind: cls
    for cls in (BernoulliEnvironment, ClippedShiftedExponentialEnvironment, EmpiricalRowsEnvironment)
}


def environment_from_dict(spec: Dict[str, Any],
                          ground_set_size: Optional[int] = None) -> WeightEnvironment:
    """Build an environment from a {kind: ..., **fields} description."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InputError("Environment description needs a 'kind' field")
    env_class = ENVIRONMENT_KINDS.get(spec["kind"])
    if env_class is None:
        raise InputError(
            f"Unknown environment kind '{spec['kind']}'; "
            f"available: {', '.join(sorted(ENVIRONMENT_KINDS))}"
        )
    with malformed_fields(f"environment ({env_class.kind})"):
        env = env_class.from_dict(spec)
    if ground_set_size is not None and env.ground_set_size != ground_set_size:
        raise InputError(
            f"Environment covers {env.ground_set_size} items but the matroid has {ground_set_size}"
        )
    return env


__all__ = [
    "WeightEnvironment",
    "BernoulliEnvironment",
    "ClippedShiftedExponentialEnvironment",
    "EmpiricalRowsEnvironment",
    "ENVIRONMENT_KINDS",
    "environment_from_dict",
]
