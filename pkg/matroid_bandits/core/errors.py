"""
Exception hierarchy for matroid-bandits.

Every error raised by the library derives from MatroidBanditError so that
callers (and the CLI) can map failures to exit codes in one place.
"""

from contextlib import contextmanager
from typing import Iterator, List, Optional


class MatroidBanditError(Exception):
    """Base class for all library errors."""


class InputError(MatroidBanditError, ValueError):
    """Invalid item indices, family data or weight vectors."""


class ContractViolation(MatroidBanditError):
    """A documented precondition of an operation does not hold."""


class FeedbackMismatch(ContractViolation):
    """Semi-bandit feedback does not cover exactly the chosen basis."""


class AxiomViolation(MatroidBanditError):
    """An independence oracle behaved in a way no matroid can."""


class EnumerationLimitExceeded(MatroidBanditError):
    """Exhaustive enumeration was refused for a ground set that is too large."""


class DomainError(MatroidBanditError, ValueError):
    """A numerical argument lies outside the domain of a formula."""


class InstanceParseError(InputError):
    """An instance file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, path: Optional[str] = None):
        self.line = line
        self.path = path
        location = ""
        if path is not None:
            location += f"{path}"
        if line is not None:
            location += f":{line}"
        super().__init__(f"{location}: {message}" if location else message)


class ConfigError(MatroidBanditError):
    """A run configuration failed validation."""

    def __init__(self, issues: List[str]):
        self.issues = list(issues)
        super().__init__("Invalid configuration: " + "; ".join(self.issues))


@contextmanager
def malformed_fields(context: str) -> Iterator[None]:
    """Re-raise TypeError/ValueError from field conversions as InputError."""
    try:
        yield
    except MatroidBanditError:
        raise
    except (TypeError, ValueError) as e:
        raise InputError(f"{context}: {e}") from e
