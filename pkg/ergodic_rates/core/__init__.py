"""
ergodic-rates core: logging, errors and trace events.
"""
from ergodic_rates.core.logging import logger
from ergodic_rates.core.errors import ErgodicRatesError, DomainError, UsageError, DesignError

__all__ = [
    "logger",
    "ErgodicRatesError",
    "DomainError",
    "UsageError",
    "DesignError",
]
