"""
Invariant suites behind the `verify` command.

Each suite exercises one family of guarantees on random instances of every
matroid family (and optionally on a configured instance) and collects
failures instead of stopping at the first one.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
import structlog

from .decomposition import decomposition_check
from .instances import RANDOM_FAMILIES, Instance, random_matroid
from .metrics import compute_gap_profile
from ..core.errors import EnumerationLimitExceeded, MatroidBanditError
from ..core.greedy import (
    brute_force_max_basis,
    construct_exchange_bijection,
    evaluate_modular,
    greedy_max_basis,
)
from ..matroids import ItemSet, Matroid

logger = structlog.get_logger(__name__)

AXIOM_LIMIT = 10
BRUTE_FORCE_CHECK_LIMIT = 12
VALUE_TOLERANCE = 1e-9


@dataclass
class SuiteResult:
    """Outcome of one invariant suite."""

    name: str
    checks: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, object]:
        return {"name": self.name, "checks": self.checks, "passed": self.passed,
                "failures": list(self.failures)}


def _members(mask: int, size: int) -> List[int]:
    return [e for e in range(size) if mask >> e & 1]


def check_matroid_axioms(m: Matroid) -> List[str]:
    """Exhaustively check the independence axioms and the incremental oracle."""
    L = m.ground_set_size
    if L > AXIOM_LIMIT:
        raise EnumerationLimitExceeded(
            f"Axiom check enumerates 2^L sets; L={L} exceeds {AXIOM_LIMIT}"
        )
    failures: List[str] = []
    independent = [m.is_independent(_members(mask, L)) for mask in range(1 << L)]

    if not independent[0]:
        failures.append("empty set is dependent")
    by_size: Dict[int, List[int]] = {}
    for mask, ok in enumerate(independent):
        if not ok:
            continue
        by_size.setdefault(bin(mask).count("1"), []).append(mask)
        for e in _members(mask, L):
            if not independent[mask & ~(1 << e)]:
                failures.append(f"{_members(mask, L)} is independent but drops {e} to a dependent set")
        oracle = m.oracle_for(_members(mask, L))
        for e in range(L):
            if not mask >> e & 1 and oracle.can_add(e) != independent[mask | 1 << e]:
                failures.append(f"oracle disagrees on {_members(mask, L)} + {e}")

    for size, smaller in by_size.items():
        for y in smaller:
            for x in by_size.get(size + 1, []):
                if not any(independent[y | 1 << e] for e in _members(x & ~y, L)):
                    failures.append(
                        f"augmentation fails for X={_members(x, L)}, Y={_members(y, L)}"
                    )

    largest = max(by_size) if by_size else 0
    if largest != m.rank():
        failures.append(f"rank() is {m.rank()} but the largest independent set has {largest} items")
    return failures


def random_basis(m: Matroid, rng: np.random.Generator) -> ItemSet:
    """A basis built greedily on random weights, in insertion order."""
    return greedy_max_basis(m, rng.random(m.ground_set_size))


def check_greedy_optimality(m: Matroid, w: np.ndarray) -> List[str]:
    basis = greedy_max_basis(m, w)
    if not m.is_basis(basis):
        return [f"greedy returned {basis}, which is not a basis"]
    _, best = brute_force_max_basis(m, w)
    value = evaluate_modular(basis, w)
    if abs(value - best) > VALUE_TOLERANCE:
        return [f"greedy value {value!r} differs from exhaustive optimum {best!r}"]
    return []


def check_exchange_bijection(m: Matroid, a_star: Sequence[int], a_t: Sequence[int]) -> List[str]:
    try:
        return construct_exchange_bijection(m, a_star, a_t).violations(m, a_star, a_t)
    except MatroidBanditError as e:
        return [f"bijection construction failed: {e}"]


def _random_instances(rng: np.random.Generator, per_family: int,
                      sizes: Sequence[int]) -> List[Matroid]:
    return [
        random_matroid(family, int(rng.choice(sizes)), rng)
        for family in RANDOM_FAMILIES
        for _ in range(per_family)
    ]


class VerificationRunner:
    """Runs the four invariant suites."""

    def __init__(self, seed: int = 0, per_family: int = 3, sizes: Sequence[int] = (4, 5, 6, 7, 8),
                 bases_per_instance: int = 25):
        self.rng = np.random.default_rng(seed)
        self.per_family = per_family
        self.sizes = tuple(sizes)
        self.bases_per_instance = bases_per_instance
        self.logger = logger.bind(component="verification", seed=seed)

    def run(self, instance: Optional[Instance] = None) -> List[SuiteResult]:
        matroids = _random_instances(self.rng, self.per_family, self.sizes)
        means = [self.rng.random(m.ground_set_size) for m in matroids]
        if instance is not None:
            matroids.append(instance.matroid)
            means.append(instance.environment.mean_vector())

        suites = [
            self.axioms_suite(matroids),
            self.greedy_suite(matroids),
            self.bijection_suite(matroids),
            self.decomposition_suite(matroids, means),
        ]
        for suite in suites:
            self.logger.info("Suite finished", suite=suite.name, checks=suite.checks,
                             failures=len(suite.failures))
        return suites

    def axioms_suite(self, matroids: Sequence[Matroid]) -> SuiteResult:
        suite = SuiteResult("matroid_axioms")
        for m in matroids:
            if m.ground_set_size > AXIOM_LIMIT:
                continue
            suite.checks += 1
            suite.failures += [f"{m!r}: {issue}" for issue in check_matroid_axioms(m)]
        return suite

    def greedy_suite(self, matroids: Sequence[Matroid]) -> SuiteResult:
        suite = SuiteResult("greedy_vs_brute_force")
        for m in matroids:
            if m.ground_set_size > BRUTE_FORCE_CHECK_LIMIT:
                continue
            weights = [self.rng.random(m.ground_set_size),
                       self.rng.integers(0, 3, m.ground_set_size).astype(float)]
            for w in weights:
                suite.checks += 1
                suite.failures += [f"{m!r}: {issue}" for issue in check_greedy_optimality(m, w)]
        return suite

    def bijection_suite(self, matroids: Sequence[Matroid]) -> SuiteResult:
        suite = SuiteResult("exchange_bijection")
        for m in matroids:
            for _ in range(self.bases_per_instance):
                a_star, a_t = random_basis(m, self.rng), random_basis(m, self.rng)
                suite.checks += 1
                suite.failures += [f"{m!r}: {issue}"
                                   for issue in check_exchange_bijection(m, a_star, a_t)]
        return suite

    def decomposition_suite(self, matroids: Sequence[Matroid],
                            means: Sequence[np.ndarray]) -> SuiteResult:
        suite = SuiteResult("regret_decomposition")
        for m, w_bar in zip(matroids, means):
            profile = compute_gap_profile(m, w_bar)
            for _ in range(self.bases_per_instance):
                suite.checks += 1
                try:
                    report = decomposition_check(m, w_bar, random_basis(m, self.rng), profile)
                except MatroidBanditError as e:
                    suite.failures.append(f"{m!r}: {e}")
                    continue
                suite.failures += [f"{m!r}: {issue}" for issue in report.failures]
        return suite


def run_verification(seed: int = 0, instance: Optional[Instance] = None,
                     **options) -> List[SuiteResult]:
    """All suites on fresh random instances, plus the given instance when present."""
    return VerificationRunner(seed=seed, **options).run(instance)
