"""
Run configuration validation for matroid-bandits.

This module checks raw experiment configurations field by field and reports
every problem at once, so a config file can be fixed in one pass.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List
import structlog

from .errors import InputError

logger = structlog.get_logger(__name__)

MATROID_SOURCES = ("family", "generator", "load")
MATROID_GENERATORS = ("lower_bound", "random_graphic", "random_uniform",
                      "random_partition", "random_transversal", "random_linear")
INSTANCE_FORMATS = ("edge_list_graph", "bipartite_graph", "feature_matrix")
ENVIRONMENT_FORMATS = ("reward_rows", "loan_status_rows")
ENVIRONMENT_GENERATORS = ("bernoulli_uniform",)
KNOWN_FIELDS = ("name", "matroid", "environment", "policies", "horizon", "seed",
                "replications", "workers", "output", "full_trace_limit", "instrument")


@dataclass
class ValidationResult:
    """Result of validating a raw configuration."""

    valid: bool
    blocking_issues: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


class ConfigValidator:
    """Validates raw run configurations before they become RunConfig objects."""

    def __init__(self):
        self.logger = logger.bind(component="config_validator")

    def validate(self, raw: Any) -> ValidationResult:
        """Validate a parsed configuration mapping."""
        blocking_issues: List[str] = []
        warnings: List[str] = []

        if not isinstance(raw, dict):
            return ValidationResult(False, ["config: must be a mapping of fields"], [])

        for key in raw:
            if key not in KNOWN_FIELDS:
                warnings.append(f"{key}: unknown field ignored")

        self._check_matroid(raw.get("matroid"), blocking_issues)
        self._check_environment(raw.get("environment"), raw.get("matroid"), blocking_issues)
        self._check_policies(raw.get("policies"), blocking_issues)
        self._check_counts(raw, blocking_issues, warnings)

        result = ValidationResult(
            valid=len(blocking_issues) == 0,
            blocking_issues=blocking_issues,
            warnings=warnings,
        )
        self.logger.debug("Validation completed",
                          valid=result.valid,
                          blocking_issues=len(blocking_issues),
                          warnings=len(warnings))
        return result

    def _check_matroid(self, spec: Any, blocking_issues: List[str]) -> None:
        """Check the matroid section."""
        if spec is None:
            blocking_issues.append("matroid: required")
            return
        if not isinstance(spec, dict):
            blocking_issues.append("matroid: must be a mapping")
            return
        sources = [s for s in MATROID_SOURCES if s in spec]
        if len(sources) != 1:
            blocking_issues.append(
                f"matroid: exactly one of {', '.join(MATROID_SOURCES)} is required"
            )
            return
        if "generator" in spec and spec["generator"] not in MATROID_GENERATORS:
            blocking_issues.append(
                f"matroid.generator: unknown generator '{spec['generator']}'"
            )
        if "load" in spec and spec.get("format") not in INSTANCE_FORMATS:
            blocking_issues.append(
                f"matroid.format: must be one of {', '.join(INSTANCE_FORMATS)}"
            )

    def _check_environment(self, spec: Any, matroid_spec: Any,
                           blocking_issues: List[str]) -> None:
        """Check the environment section; it may be implied by the matroid source."""
        if spec is None:
            implied = isinstance(matroid_spec, dict) and (
                matroid_spec.get("generator") == "lower_bound"
                or matroid_spec.get("format") in ("edge_list_graph", "bipartite_graph")
            )
            if not implied:
                blocking_issues.append(
                    "environment: required unless the matroid source supplies weights"
                )
            return
        if not isinstance(spec, dict):
            blocking_issues.append("environment: must be a mapping")
            return
        if "load" in spec:
            if spec.get("format", "reward_rows") not in ENVIRONMENT_FORMATS:
                blocking_issues.append(
                    f"environment.format: must be one of {', '.join(ENVIRONMENT_FORMATS)}"
                )
        elif "generator" in spec:
            if spec["generator"] not in ENVIRONMENT_GENERATORS:
                blocking_issues.append(
                    f"environment.generator: unknown generator '{spec['generator']}'"
                )
        elif "kind" not in spec:
            blocking_issues.append("environment: one of kind, generator or load is required")

    def _check_policies(self, policies: Any, blocking_issues: List[str]) -> None:
        """Check the policy list."""
        # Imported here: policies depend on the matroid package, which depends on core.
        from ..policies import parse_policy_spec

        if policies is None:
            return
        if not isinstance(policies, list) or not policies:
            blocking_issues.append("policies: must be a non-empty list")
            return
        for index, spec in enumerate(policies):
            try:
                parse_policy_spec(spec)
            except InputError as e:
                blocking_issues.append(f"policies[{index}]: {e}")

    def _check_counts(self, raw: Dict[str, Any], blocking_issues: List[str],
                      warnings: List[str]) -> None:
        """Check integer and flag fields."""
        for key, minimum in (("horizon", 1), ("replications", 1), ("workers", 1),
                             ("full_trace_limit", 1)):
            if key in raw and (not _is_int(raw[key]) or raw[key] < minimum):
                blocking_issues.append(f"{key}: must be an integer >= {minimum}")
        if "seed" in raw and (not _is_int(raw["seed"]) or raw["seed"] < 0):
            blocking_issues.append("seed: must be a non-negative integer")
        if "instrument" in raw and not isinstance(raw["instrument"], bool):
            blocking_issues.append("instrument: must be true or false")
        if "output" in raw and raw["output"] is not None and not isinstance(raw["output"], str):
            blocking_issues.append("output: must be a path string")
        if _is_int(raw.get("horizon")) and raw["horizon"] > 1_000_000:
            warnings.append(f"horizon: {raw['horizon']} episodes per replication will be slow")
        if raw.get("instrument") and _is_int(raw.get("horizon")) and raw["horizon"] > 100_000:
            warnings.append("instrument: per-episode decomposition checks on long runs are slow")
