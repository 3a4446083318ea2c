"""
Per-episode regret decomposition checks.

The expected regret of a basis equals the sum of gaps along its exchange
bijection with the optimal basis; dropping negative gaps can only increase
that sum, and every chosen item is charged to at most one optimal item.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from .metrics import GapProfile, compute_gap_profile
from ..core.errors import ContractViolation
from ..core.greedy import construct_exchange_bijection, evaluate_modular
from ..matroids.base import Matroid
from ..policies.base import PolicyDecision

logger = structlog.get_logger(__name__)

DEFAULT_TOLERANCE = 1e-9


@dataclass
class DecompositionReport:
    """Outcome of checking one basis against the optimal basis."""

    chosen: Tuple[int, ...]
    optimal: Tuple[int, ...]
    pi: Tuple[int, ...]
    regret: float
    paired_gap_sum: float
    truncated_gap_sum: float
    events: Dict[Tuple[int, int], int] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, object]:
        return {
            "chosen": list(self.chosen),
            "optimal": list(self.optimal),
            "pi": list(self.pi),
            "regret": self.regret,
            "paired_gap_sum": self.paired_gap_sum,
            "truncated_gap_sum": self.truncated_gap_sum,
            "failures": list(self.failures),
        }


def decomposition_check(m: Matroid, w_bar: np.ndarray, a_t: Sequence[int],
                        gap_profile: Optional[GapProfile] = None,
                        tolerance: float = DEFAULT_TOLERANCE) -> DecompositionReport:
    """Verify the regret decomposition of basis a_t; failures are reported, not raised."""
    w_bar = np.asarray(w_bar, dtype=float)
    gp = gap_profile if gap_profile is not None else compute_gap_profile(m, w_bar)
    a_t = m.items(a_t)
    if not m.is_basis(a_t):
        raise ContractViolation(f"Chosen set {a_t} is not a basis")

    a_star = gp.optimal
    bijection = construct_exchange_bijection(m, a_star, a_t)
    failures = bijection.violations(m, a_star, a_t)

    regret = float(evaluate_modular(a_star, w_bar) - evaluate_modular(a_t, w_bar))
    paired = float(sum(w_bar[a_star[i]] - w_bar[a_t[k]] for k, i in enumerate(bijection.pi)))
    if abs(regret - paired) > tolerance:
        failures.append(f"paired gaps {paired!r} differ from regret {regret!r}")

    # 1_{e,k} restricted to suboptimal e and k in O_e
    events: Dict[Tuple[int, int], int] = {}
    truncated = 0.0
    for k, i in enumerate(bijection.pi):
        e = a_t[k]
        if e in gp.positive_sets and i in gp.positive_sets[e]:
            events[(e, i)] = 1
            truncated += float(gp.gaps[e][i])
    if truncated < paired - tolerance:
        failures.append(f"positive-gap sum {truncated!r} is below paired gaps {paired!r}")

    if sum(events.values()) > gp.rank:
        failures.append(f"{sum(events.values())} charged events exceed rank {gp.rank}")
    per_item: Dict[int, int] = {}
    for (e, _), value in events.items():
        per_item[e] = per_item.get(e, 0) + value
    for e, count in per_item.items():
        if count > 1:
            failures.append(f"item {e} is charged {count} times")

    report = DecompositionReport(
        chosen=a_t,
        optimal=a_star,
        pi=bijection.pi,
        regret=regret,
        paired_gap_sum=paired,
        truncated_gap_sum=truncated,
        events=events,
        failures=failures,
    )
    if failures:
        logger.warning("Decomposition check failed", chosen=list(a_t), failures=failures)
    return report


def ucb_dominance_check(m: Matroid, w_bar: np.ndarray, decision: PolicyDecision,
                        gap_profile: Optional[GapProfile] = None) -> List[str]:
    """Chosen suboptimal items whose UCB falls below that of their paired optimal item."""
    if decision.ucb_values is None:
        raise ContractViolation("Decision carries no UCB values")
    gp = gap_profile if gap_profile is not None else compute_gap_profile(m, w_bar)
    a_star = gp.optimal
    a_t = decision.basis
    bijection = construct_exchange_bijection(m, a_star, a_t)
    optimal = set(a_star)
    ucb = decision.ucb_values
    violations = []
    for k, i in enumerate(bijection.pi):
        e = a_t[k]
        if e in optimal:
            continue
        if ucb[e] < ucb[a_star[i]]:
            violations.append(
                f"step {k}: U({e})={ucb[e]!r} < U({a_star[i]})={ucb[a_star[i]]!r}"
            )
    return violations
