"""
Check registry; importing this package registers the built-in checks.
"""
from ergodic_rates.checks.registry import CheckContext, CheckMetadata, CheckRegistry, check_registry
from ergodic_rates.checks import builtin  # noqa: F401

__all__ = ["CheckContext", "CheckMetadata", "CheckRegistry", "check_registry"]
