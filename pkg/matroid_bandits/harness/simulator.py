"""
Episodic simulation of policies on a matroid bandit instance.

Every (policy, replication) pair is an independent job: it owns its
environment and policy random streams, its bandit state and its trace
buffer. Jobs with the same replication index see the same weight sequence,
whatever the policy. Results are joined in config order after all jobs end.
"""

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from .decomposition import decomposition_check, ucb_dominance_check
from .instances import Instance, resolve_instance
from .metrics import GapProfile, compute_gap_profile
from ..core.config import RunConfig
from ..environments import WeightEnvironment, environment_from_dict
from ..matroids import ItemSet, Matroid, matroid_from_dict
from ..policies import create_policy

logger = structlog.get_logger(__name__)

CHECKPOINT_RATIO = 1.1
# Invariant failures logged per job before going quiet.
MAX_LOGGED_FAILURES = 5


def checkpoint_episodes(n: int, full_trace_limit: int) -> List[int]:
    """Episodes to record: all of them up to the limit, then a geometric grid ending at n."""
    if n <= full_trace_limit:
        return list(range(1, n + 1))
    episodes = list(range(1, full_trace_limit + 1))
    x = float(full_trace_limit)
    while True:
        x *= CHECKPOINT_RATIO
        episode = int(round(x))
        if episode >= n:
            break
        if episode > episodes[-1]:
            episodes.append(episode)
    episodes.append(n)
    return episodes


@dataclass
class EpisodeTrace:
    """One recorded episode of one policy in one replication."""

    episode: int
    policy: str
    replication: int
    chosen: ItemSet
    realized_return: float
    expected_return: float
    pseudo_regret: float
    realized_regret: float
    realized_return_cum: float
    expected_return_cum: float
    pseudo_regret_cum: float
    realized_regret_cum: float

    @property
    def per_step_return(self) -> float:
        """Expected cumulative return divided by the number of episodes so far."""
        return self.expected_return_cum / self.episode


@dataclass
class ReplicationResult:
    """Everything one (policy, replication) job produced."""

    policy: str
    policy_index: int
    replication: int
    seed: int
    traces: List[EpisodeTrace] = field(default_factory=list)
    expected_cost_per_step: Optional[float] = None
    decomposition_failures: int = 0
    dominance_violations: int = 0

    @property
    def final(self) -> Optional[EpisodeTrace]:
        return self.traces[-1] if self.traces else None

    @property
    def invariant_failures(self) -> int:
        return self.decomposition_failures + self.dominance_violations


@dataclass
class RunResult:
    """Joined output of a whole run."""

    config: RunConfig
    instance: Instance
    w_bar: np.ndarray
    optimal_basis: ItemSet
    results: List[ReplicationResult]
    duration_seconds: float = 0.0

    @property
    def traces(self) -> List[EpisodeTrace]:
        return [trace for result in self.results for trace in result.traces]

    @property
    def policy_labels(self) -> List[str]:
        labels: List[str] = []
        for result in self.results:
            if result.policy not in labels:
                labels.append(result.policy)
        return labels

    @property
    def invariant_failures(self) -> int:
        return sum(result.invariant_failures for result in self.results)


def run_replication(matroid: Matroid, environment: WeightEnvironment, w_bar: np.ndarray,
                    policy_spec: Any, policy_index: int, replication: int, seed: int,
                    horizon: int, record: Sequence[int], instrument: bool = False,
                    gap_profile: Optional[GapProfile] = None) -> ReplicationResult:
    """Run one policy for horizon episodes on one replication's random streams."""
    env_rng = np.random.default_rng([seed, 0])
    policy_rng = np.random.default_rng([seed, 1])
    policy = create_policy(policy_spec, matroid, w_bar, policy_rng)
    log = logger.bind(policy=policy.label, replication=replication)
    if gap_profile is None:
        gap_profile = compute_gap_profile(matroid, w_bar)

    a_star = list(gap_profile.optimal)
    # Sums run in index order so that choosing A* costs exactly zero.
    f_star_bar = float(w_bar[sorted(a_star)].sum())
    result = ReplicationResult(policy=policy.label, policy_index=policy_index,
                               replication=replication, seed=seed)
    tracks_cost = environment.expected_cost(()) is not None
    record_set = set(record)

    policy.initialize(environment.draw_full(env_rng))
    realized_cum = expected_cum = pseudo_cum = realized_regret_cum = cost_cum = 0.0
    for t in range(1, horizon + 1):
        decision = policy.select()
        w_t = environment.draw_full(env_rng)
        basis = list(decision.basis)
        policy.update(decision.basis, environment.feedback(w_t, decision.basis))

        realized = float(w_t[basis].sum())
        expected = float(w_bar[sorted(basis)].sum())
        pseudo = f_star_bar - expected
        realized_regret = float(w_t[a_star].sum()) - realized
        realized_cum += realized
        expected_cum += expected
        pseudo_cum += pseudo
        realized_regret_cum += realized_regret
        if tracks_cost:
            cost_cum += environment.expected_cost(basis)

        if instrument:
            report = decomposition_check(matroid, w_bar, decision.basis, gap_profile)
            if not report.ok:
                result.decomposition_failures += 1
                if result.decomposition_failures <= MAX_LOGGED_FAILURES:
                    log.error("Decomposition failed", episode=t, failures=report.failures)
            if decision.ucb_values is not None:
                violations = ucb_dominance_check(matroid, w_bar, decision, gap_profile)
                if violations:
                    result.dominance_violations += 1
                    if result.dominance_violations <= MAX_LOGGED_FAILURES:
                        log.error("UCB dominance failed", episode=t, violations=violations)

        if t in record_set:
            result.traces.append(EpisodeTrace(
                episode=t,
                policy=policy.label,
                replication=replication,
                chosen=decision.basis,
                realized_return=realized,
                expected_return=expected,
                pseudo_regret=pseudo,
                realized_regret=realized_regret,
                realized_return_cum=realized_cum,
                expected_return_cum=expected_cum,
                pseudo_regret_cum=pseudo_cum,
                realized_regret_cum=realized_regret_cum,
            ))

    if tracks_cost:
        result.expected_cost_per_step = cost_cum / horizon
    log.debug("Replication finished", pseudo_regret=pseudo_cum)
    return result


def _run_job(payload: Dict[str, Any]) -> ReplicationResult:
    """Worker-process entry point; rebuilds the instance from its serialized form."""
    matroid = matroid_from_dict(payload["matroid"])
    environment = environment_from_dict(payload["environment"], matroid.ground_set_size)
    return run_replication(
        matroid,
        environment,
        np.asarray(payload["w_bar"], dtype=float),
        payload["policy_spec"],
        payload["policy_index"],
        payload["replication"],
        payload["seed"],
        payload["horizon"],
        payload["record"],
        payload["instrument"],
    )


class Simulator:
    """Runs every policy of a config over every replication."""

    def __init__(self, config: RunConfig, instance: Instance):
        self.config = config
        self.instance = instance
        self.logger = logger.bind(component="simulator", run=config.name)
        # w_bar is read once here; only the optimal policy and the metrics use it.
        self.w_bar = instance.environment.mean_vector()
        self.gap_profile = compute_gap_profile(instance.matroid, self.w_bar)

    def jobs(self) -> List[Dict[str, Any]]:
        cfg = self.config
        record = checkpoint_episodes(cfg.horizon, cfg.full_trace_limit)
        return [
            {
                "policy_spec": spec,
                "policy_index": index,
                "replication": r,
                "seed": cfg.replication_seed(r),
                "horizon": cfg.horizon,
                "record": record,
                "instrument": cfg.instrument,
            }
            for index, spec in enumerate(cfg.policies)
            for r in range(cfg.replications)
        ]

    def run(self, progress: Optional[Callable[[ReplicationResult], None]] = None) -> RunResult:
        """Run all jobs, in worker processes when more than one worker is configured."""
        cfg = self.config
        jobs = self.jobs()
        start = time.perf_counter()
        self.logger.info("Run started", jobs=len(jobs), horizon=cfg.horizon,
                         replications=cfg.replications, workers=cfg.workers)
        results: List[ReplicationResult] = []

        if cfg.workers > 1 and len(jobs) > 1:
            shared = {
                "matroid": self.instance.matroid.to_dict(),
                "environment": self.instance.environment.to_dict(),
                "w_bar": self.w_bar.tolist(),
            }
            with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                for result in pool.map(_run_job, [{**shared, **job} for job in jobs]):
                    results.append(result)
                    if progress:
                        progress(result)
        else:
            for job in jobs:
                result = run_replication(
                    self.instance.matroid,
                    self.instance.environment,
                    self.w_bar,
                    job["policy_spec"],
                    job["policy_index"],
                    job["replication"],
                    job["seed"],
                    job["horizon"],
                    job["record"],
                    job["instrument"],
                    self.gap_profile,
                )
                results.append(result)
                if progress:
                    progress(result)

        results.sort(key=lambda r: (r.policy_index, r.replication))
        run = RunResult(
            config=cfg,
            instance=self.instance,
            w_bar=self.w_bar,
            optimal_basis=self.gap_profile.optimal,
            results=results,
            duration_seconds=time.perf_counter() - start,
        )
        self.logger.info("Run finished", duration_seconds=round(run.duration_seconds, 3),
                         invariant_failures=run.invariant_failures)
        return run


def run_episodes(cfg: RunConfig, instance: Optional[Instance] = None) -> List[EpisodeTrace]:
    """Recorded traces of every policy and replication, in config order."""
    if instance is None:
        instance = resolve_instance(cfg)
    return Simulator(cfg, instance).run().traces


@dataclass
class PolicyCurve:
    """Across-replication mean and standard error at each recorded episode."""

    policy: str
    episodes: List[int]
    pseudo_regret_mean: List[float]
    pseudo_regret_stderr: List[float]
    per_step_return_mean: List[float]
    per_step_return_stderr: List[float]
    replications: int
    expected_cost_per_step: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "policy": self.policy,
            "replications": self.replications,
            "episodes": self.episodes,
            "pseudo_regret_mean": self.pseudo_regret_mean,
            "pseudo_regret_stderr": self.pseudo_regret_stderr,
            "per_step_return_mean": self.per_step_return_mean,
            "per_step_return_stderr": self.per_step_return_stderr,
            "expected_cost_per_step": self.expected_cost_per_step,
        }


def _mean_and_stderr(values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Column means and standard errors over the replication axis."""
    mean = values.mean(axis=0)
    if values.shape[0] < 2:
        return mean, np.zeros_like(mean)
    return mean, values.std(axis=0, ddof=1) / math.sqrt(values.shape[0])


def aggregate(results: Sequence[ReplicationResult]) -> Dict[str, PolicyCurve]:
    """Per-policy curves, keyed by policy label in first-seen order."""
    grouped: Dict[str, List[ReplicationResult]] = {}
    for result in results:
        grouped.setdefault(result.policy, []).append(result)

    curves: Dict[str, PolicyCurve] = {}
    for label, group in grouped.items():
        episodes = [trace.episode for trace in group[0].traces]
        regret = np.array([[t.pseudo_regret_cum for t in r.traces] for r in group], dtype=float)
        per_step = np.array([[t.per_step_return for t in r.traces] for r in group], dtype=float)
        regret_mean, regret_se = _mean_and_stderr(regret)
        step_mean, step_se = _mean_and_stderr(per_step)
        costs = [r.expected_cost_per_step for r in group if r.expected_cost_per_step is not None]
        curves[label] = PolicyCurve(
            policy=label,
            episodes=episodes,
            pseudo_regret_mean=regret_mean.tolist(),
            pseudo_regret_stderr=regret_se.tolist(),
            per_step_return_mean=step_mean.tolist(),
            per_step_return_stderr=step_se.tolist(),
            replications=len(group),
            expected_cost_per_step=float(np.mean(costs)) if costs else None,
        )
    return curves


__all__ = [
    "EpisodeTrace",
    "ReplicationResult",
    "RunResult",
    "PolicyCurve",
    "Simulator",
    "aggregate",
    "checkpoint_episodes",
    "run_episodes",
    "run_replication",
]
