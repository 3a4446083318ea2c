"""Core modules for matroid-bandits."""

from .config import RunConfig, load_run_config
from .validator import ConfigValidator, ValidationResult

__all__ = ["RunConfig", "load_run_config", "ConfigValidator", "ValidationResult"]
