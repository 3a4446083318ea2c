"""
Configuration management for matroid-bandits.

Experiments are described by YAML documents; this module turns them into
RunConfig objects and back.
"""

import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import structlog
import yaml

from .errors import ConfigError
from .validator import ConfigValidator

logger = structlog.get_logger(__name__)

OUTPUT_DIR_ENV = "MATROID_BANDITS_OUTPUT_DIR"
DEFAULT_FULL_TRACE_LIMIT = 10_000


def default_policies() -> List[Any]:
    return ["omm", {"epsilon_greedy": {"epsilon": 0.1}}, "optimal"]


@dataclass
class RunConfig:
    """A complete, validated experiment definition."""

    matroid: Dict[str, Any]
    environment: Optional[Dict[str, Any]] = None
    policies: List[Any] = field(default_factory=default_policies)
    horizon: int = 1000
    seed: int = 0
    replications: int = 1
    workers: int = 1
    output: Optional[str] = None
    full_trace_limit: int = DEFAULT_FULL_TRACE_LIMIT
    instrument: bool = False
    name: str = "run"

    def replication_seed(self, replication: int) -> int:
        """Seed of one replication: seed + replication index."""
        return self.seed + replication

    def output_dir(self) -> Path:
        """Output directory, overridable through MATROID_BANDITS_OUTPUT_DIR."""
        override = os.environ.get(OUTPUT_DIR_ENV)
        if override:
            return Path(override)
        return Path(self.output) if self.output else Path("results") / self.name

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, raw: Any) -> "RunConfig":
        """Validate a raw mapping and build a RunConfig, raising ConfigError."""
        result = ConfigValidator().validate(raw)
        for warning in result.warnings:
            logger.warning("Config warning", detail=warning)
        if not result.valid:
            raise ConfigError(result.blocking_issues)
        known = {k: v for k, v in raw.items() if k in cls.__dataclass_fields__}
        return cls(**known)


def load_document(path: Union[str, Path]) -> Any:
    """Parse a YAML (or JSON) document."""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            if path.suffix == ".json":
                return json.load(f)
            return yaml.safe_load(f)
    except FileNotFoundError:
        raise ConfigError([f"config: file not found: {path}"])
    except (yaml.YAMLError, json.JSONDecodeError) as e:
        raise ConfigError([f"config: cannot parse {path}: {e}"])


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """Load a run configuration, or the replay config embedded in a run manifest."""
    raw = load_document(path)
    if isinstance(raw, dict) and "replay" in raw:
        raw = raw["replay"]
    config = RunConfig.from_dict(raw)
    logger.info("Config loaded", path=str(path), name=config.name)
    return config


def dump_document(data: Any, path: Union[str, Path]) -> None:
    """Write a YAML document with stable key order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(data, f, default_flow_style=False, sort_keys=False)
