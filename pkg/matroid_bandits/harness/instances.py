"""
Problem instances for matroid-bandits.

Builds the partition instance behind the asymptotic lower bound, random
instances of every matroid family, and resolves the matroid/environment
sections of a RunConfig into live objects.
"""

from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, List, NamedTuple, Optional, Tuple, Union

import numpy as np
import structlog

from .loaders import load_instance
from .metrics import lower_bound_slope
from ..core.config import RunConfig
from ..core.errors import DomainError, InputError, malformed_fields
from ..environments import BernoulliEnvironment, WeightEnvironment, environment_from_dict
from ..matroids import (
    GraphicMatroid,
    LinearMatroid,
    Matroid,
    PartitionMatroid,
    TransversalMatroid,
    UniformMatroid,
    matroid_from_dict,
)

logger = structlog.get_logger(__name__)

RANDOM_FAMILIES = ("uniform", "partition", "graphic", "transversal", "linear")


class LowerBoundInstance(NamedTuple):
    """Partition instance with gap delta in every block."""

    matroid: PartitionMatroid
    environment: BernoulliEnvironment
    slope: float


def balanced_blocks(L: int, K: int) -> List[int]:
    """Block index of every item for K contiguous blocks of sizes floor/ceil(L/K)."""
    base, extra = divmod(L, K)
    block_of: List[int] = []
    for block in range(K):
        block_of.extend([block] * (base + (1 if block < extra else 0)))
    return block_of


def generate_lower_bound_instance(L: int, K: int, delta: float) -> LowerBoundInstance:
    """Rank-K partition matroid; the min-index item of each block has mean 0.5, the rest 0.5 - delta."""
    if not 0.0 < delta < 0.5:
        raise DomainError(f"delta must lie in (0, 0.5), got {delta}")
    if K < 1 or L < K:
        raise InputError(f"Need 1 <= K <= L, got L={L}, K={K}")
    block_of = balanced_blocks(L, K)
    means = [0.5 - delta] * L
    seen = set()
    for item, block in enumerate(block_of):
        if block not in seen:
            seen.add(block)
            means[item] = 0.5
    return LowerBoundInstance(
        matroid=PartitionMatroid(block_of),
        environment=BernoulliEnvironment(means),
        slope=lower_bound_slope(L, K, delta),
    )


def random_bernoulli_means(L: int, rng: np.random.Generator,
                           low: float = 0.0, high: float = 1.0) -> np.ndarray:
    if not 0.0 <= low <= high <= 1.0:
        raise InputError(f"Need 0 <= low <= high <= 1, got low={low}, high={high}")
    return rng.uniform(low, high, L)


def random_uniform(L: int, rng: np.random.Generator, k: Optional[int] = None) -> UniformMatroid:
    if k is None:
        k = int(rng.integers(1, L + 1))
    return UniformMatroid(L, k)


def random_partition(L: int, blocks: int, rng: np.random.Generator,
                     max_capacity: int = 1) -> PartitionMatroid:
    if blocks < 1 or max_capacity < 1:
        raise InputError("Need at least one block of capacity at least one")
    block_of = rng.integers(0, blocks, L).tolist()
    capacity_of = rng.integers(1, max_capacity + 1, blocks).tolist()
    return PartitionMatroid(block_of, capacity_of)


def random_graphic(vertices: int, edges: int, rng: np.random.Generator) -> GraphicMatroid:
    """Connected simple graph: a random spanning tree plus uniformly chosen extra edges."""
    if vertices < 2:
        raise InputError(f"Need at least 2 vertices, got {vertices}")
    max_edges = vertices * (vertices - 1) // 2
    if not vertices - 1 <= edges <= max_edges:
        raise InputError(
            f"A connected simple graph on {vertices} vertices has "
            f"{vertices - 1}..{max_edges} edges, got {edges}"
        )
    order = rng.permutation(vertices).tolist()
    tree = set()
    for i in range(1, vertices):
        parent = order[int(rng.integers(i))]
        tree.add(tuple(sorted((order[i], parent))))
    others = [pair for pair in combinations(range(vertices), 2) if pair not in tree]
    picked = rng.choice(len(others), size=edges - len(tree), replace=False)
    edge_list = sorted(tree) + [others[int(i)] for i in picked]
    shuffled = [edge_list[int(i)] for i in rng.permutation(len(edge_list))]
    return GraphicMatroid(vertices, shuffled)


def random_transversal(L: int, right: int, rng: np.random.Generator,
                       density: float = 0.3) -> TransversalMatroid:
    adjacency = [np.flatnonzero(rng.random(right) < density).tolist() for _ in range(L)]
    return TransversalMatroid(right, adjacency)


def random_linear(L: int, dimension: int, rng: np.random.Generator,
                  binary: bool = False, max_entry: int = 2) -> LinearMatroid:
    """Column matroid with 0-1 entries or small integers in [-max_entry, max_entry]."""
    if binary:
        columns = rng.integers(0, 2, (L, dimension))
    else:
        columns = rng.integers(-max_entry, max_entry + 1, (L, dimension))
    return LinearMatroid(dimension, [[int(x) for x in column] for column in columns])


def random_matroid(family: str, L: int, rng: np.random.Generator) -> Matroid:
    """A random matroid of the given family on L items, with random family parameters."""
    if family == "uniform":
        return random_uniform(L, rng)
    if family == "partition":
        return random_partition(L, int(rng.integers(1, L + 1)), rng, max_capacity=2)
    if family == "graphic":
        fewest = next(v for v in range(2, L + 2) if v * (v - 1) // 2 >= L)
        return random_graphic(int(rng.integers(fewest, L + 2)), L, rng)
    if family == "transversal":
        return random_transversal(L, int(rng.integers(1, L + 1)), rng, density=0.4)
    if family == "linear":
        return random_linear(L, int(rng.integers(1, min(L, 4) + 1)), rng,
                             binary=bool(rng.integers(2)))
    raise InputError(f"Unknown family '{family}'; available: {', '.join(RANDOM_FAMILIES)}")


@dataclass
class Instance:
    """A matroid with its weight environment, as resolved from a config."""

    matroid: Matroid
    environment: WeightEnvironment
    source: str
    lower_bound: Optional[Dict[str, float]] = None

    @property
    def ground_set_size(self) -> int:
        return self.matroid.ground_set_size


def _require(spec: Dict[str, Any], key: str, section: str) -> Any:
    if key not in spec:
        raise InputError(f"{section}: missing field '{key}'")
    return spec[key]


def _resolve_path(path: Union[str, Path], base_dir: Optional[Path]) -> Path:
    path = Path(path)
    if base_dir is not None and not path.is_absolute():
        return base_dir / path
    return path


def _generate_matroid(spec: Dict[str, Any], seed: int) -> Tuple[Matroid, Optional[Dict[str, Any]],
                                                                 Optional[Dict[str, float]]]:
    generator = spec["generator"]
    rng = np.random.default_rng(spec.get("seed", seed))
    if generator == "lower_bound":
        L = int(_require(spec, "L", "matroid"))
        K = int(_require(spec, "K", "matroid"))
        delta = float(_require(spec, "delta", "matroid"))
        instance = generate_lower_bound_instance(L, K, delta)
        info = {"L": L, "K": K, "delta": delta, "slope": instance.slope}
        return instance.matroid, instance.environment.to_dict(), info
    if generator == "random_graphic":
        vertices = int(_require(spec, "vertices", "matroid"))
        edges = int(_require(spec, "edges", "matroid"))
        return random_graphic(vertices, edges, rng), None, None
    L = int(_require(spec, "L", "matroid"))
    if generator == "random_uniform":
        k = spec.get("k")
        return random_uniform(L, rng, None if k is None else int(k)), None, None
    if generator == "random_partition":
        blocks = int(_require(spec, "blocks", "matroid"))
        return random_partition(L, blocks, rng, int(spec.get("max_capacity", 1))), None, None
    if generator == "random_transversal":
        right = int(_require(spec, "right", "matroid"))
        return random_transversal(L, right, rng, float(spec.get("density", 0.3))), None, None
    if generator == "random_linear":
        dimension = int(_require(spec, "dimension", "matroid"))
        matroid = random_linear(L, dimension, rng, bool(spec.get("binary", False)),
                                int(spec.get("max_entry", 2)))
        return matroid, None, None
    raise InputError(f"matroid: unknown generator '{generator}'")


def resolve_instance(cfg: RunConfig, base_dir: Optional[Path] = None) -> Instance:
    """Build the matroid and environment a RunConfig describes.

    Relative load paths are taken relative to base_dir. When the matroid
    source supplies weights (the lower-bound generator, edge lists and
    bipartite graphs with means) the environment section may be omitted,
    or give only extra fields of the same kind, e.g. a normalization.
    """
    spec = cfg.matroid
    implied_env: Optional[Dict[str, Any]] = None
    lower_bound = None
    if "family" in spec:
        matroid = matroid_from_dict(spec)
        source = f"family:{spec['family']}"
    elif "generator" in spec:
        with malformed_fields("matroid"):
            matroid, implied_env, lower_bound = _generate_matroid(spec, cfg.seed)
        source = f"generator:{spec['generator']}"
    else:
        loaded = load_instance(_resolve_path(spec["load"], base_dir), spec["format"])
        if loaded.matroid is None:
            raise InputError(f"matroid: format '{spec['format']}' carries no matroid")
        matroid, implied_env = loaded.matroid, loaded.environment
        source = f"load:{spec['format']}"

    env_spec = cfg.environment
    L = matroid.ground_set_size
    if env_spec is None:
        if implied_env is None:
            raise InputError("environment: required for this matroid source")
        environment = environment_from_dict(implied_env, L)
    elif "kind" in env_spec:
        data = dict(env_spec)
        if implied_env is not None and implied_env.get("kind") == env_spec["kind"]:
            data = {**implied_env, **env_spec}
        environment = environment_from_dict(data, L)
    elif "generator" in env_spec:
        with malformed_fields("environment"):
            rng = np.random.default_rng(env_spec.get("seed", cfg.seed))
            means = random_bernoulli_means(L, rng, float(env_spec.get("low", 0.0)),
                                           float(env_spec.get("high", 1.0)))
        environment = BernoulliEnvironment(means)
    else:
        loaded = load_instance(_resolve_path(env_spec["load"], base_dir),
                               env_spec.get("format", "reward_rows"))
        if loaded.environment is None:
            raise InputError("environment: loaded file carries no weights")
        environment = environment_from_dict(loaded.environment, L)

    logger.info("Instance resolved", source=source, L=L, K=matroid.rank(),
                environment=environment.kind)
    return Instance(matroid=matroid, environment=environment, source=source,
                    lower_bound=lower_bound)
