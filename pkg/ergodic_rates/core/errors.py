"""Exception hierarchy shared by measures, models and the CLI."""


class ErgodicRatesError(ValueError):
    """Base class; subclasses ValueError so plain `except ValueError` still catches it."""


class DomainError(ErgodicRatesError):
    """Argument outside the mathematical domain (ε ∉ (0, π], α ≤ 0, atom inside a gap...)."""


class UsageError(ErgodicRatesError):
    """API misuse: dimension mismatch, short grid, non-unit η, inapplicable check."""


class DesignError(ErgodicRatesError):
    """A measure design spec is infeasible."""


__all__ = ["ErgodicRatesError", "DomainError", "UsageError", "DesignError"]
