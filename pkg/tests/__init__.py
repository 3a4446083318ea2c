"""Test package for matroid-bandits."""
