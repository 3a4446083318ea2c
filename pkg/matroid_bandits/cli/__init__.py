"""CLI modules for matroid-bandits."""

__all__ = []
