"""
Matroid family registry for matroid-bandits.

This module discovers every Matroid family in the package and builds
matroids from their serialized descriptions.
"""

import importlib
import pkgutil
from typing import Any, Dict, List, Optional, Type
import structlog

from .base import Matroid
from ..core.errors import InputError, malformed_fields

logger = structlog.get_logger(__name__)


class MatroidRegistry:
    """Registry for all available matroid families."""

    def __init__(self):
        self.logger = logger.bind(component="matroid_registry")
        self._families: Dict[str, Type[Matroid]] = {}
        self._loaded = False

    def load_families(self) -> None:
        """Load all matroid families defined in this package."""
        if self._loaded:
            return

        package = importlib.import_module(__package__)
        for _, modname, ispkg in pkgutil.iter_modules(package.__path__, package.__name__ + "."):
            if ispkg or modname.endswith((".base", ".registry")):
                continue
            module = importlib.import_module(modname)
            for name in dir(module):
                obj = getattr(module, name)
                if (isinstance(obj, type) and
                    issubclass(obj, Matroid) and
                    obj is not Matroid and
                    obj.family):
                    self.register(obj)

        self._loaded = True
        self.logger.debug("Families loaded", families=sorted(self._families))

    def register(self, family_class: Type[Matroid]) -> None:
        """Register a family class under its family name."""
        existing = self._families.get(family_class.family)
        if existing is not None and existing is not family_class:
            raise ValueError(f"Duplicate matroid family: {family_class.family}")
        self._families[family_class.family] = family_class

    def get(self, family: str) -> Optional[Type[Matroid]]:
        """Get a family class by name."""
        if not self._loaded:
            self.load_families()
        return self._families.get(family)

    def get_families(self) -> List[str]:
        """Names of all available families."""
        if not self._loaded:
            self.load_families()
        return sorted(self._families)

    def create(self, spec: Dict[str, Any]) -> Matroid:
        """Build a matroid from a {family: ..., **fields} description."""
        if not isinstance(spec, dict) or "family" not in spec:
            raise InputError("Matroid description needs a 'family' field")
        family_class = self.get(str(spec["family"]))
        if family_class is None:
            raise InputError(
                f"Unknown matroid family '{spec['family']}'; "
                f"available: {', '.join(self.get_families())}"
            )
        data = {k: v for k, v in spec.items() if k != "family"}
        with malformed_fields(f"matroid ({family_class.family})"):
            return family_class.from_dict(data)

    def __contains__(self, family: str) -> bool:
        return self.get(family) is not None

    def __iter__(self):
        if not self._loaded:
            self.load_families()
        return iter(self._families.values())


_default_registry: Optional[MatroidRegistry] = None


def get_registry() -> MatroidRegistry:
    """Shared registry instance."""
    global _default_registry
    if _default_registry is None:
        _default_registry = MatroidRegistry()
    return _default_registry


def matroid_from_dict(spec: Dict[str, Any]) -> Matroid:
    """Build a matroid from its serialized description."""
    return get_registry().create(spec)
