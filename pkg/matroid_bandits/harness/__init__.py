"""Simulation harness: instances, loaders, metrics, checks and outputs."""

from .metrics import (
    GapProfile,
    compute_gap_dependent_bound,
    compute_gap_free_bound,
    compute_gap_profile,
    compute_lower_bound,
    lower_bound_slope,
)
from .decomposition import DecompositionReport, decomposition_check, ucb_dominance_check
from .loaders import LoadedInstance, load_instance
from .instances import Instance, generate_lower_bound_instance, resolve_instance
from .simulator import (
    EpisodeTrace,
    RunResult,
    Simulator,
    aggregate,
    checkpoint_episodes,
    run_episodes,
)
from .verification import SuiteResult, run_verification

__all__ = [
    "GapProfile",
    "compute_gap_profile",
    "compute_gap_dependent_bound",
    "compute_gap_free_bound",
    "compute_lower_bound",
    "lower_bound_slope",
    "DecompositionReport",
    "decomposition_check",
    "ucb_dominance_check",
    "LoadedInstance",
    "load_instance",
    "Instance",
    "generate_lower_bound_instance",
    "resolve_instance",
    "EpisodeTrace",
    "RunResult",
    "Simulator",
    "aggregate",
    "checkpoint_episodes",
    "run_episodes",
    "SuiteResult",
    "run_verification",
]
