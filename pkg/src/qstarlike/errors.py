"""Exception types shared across the package."""


class DomainError(ValueError):
    """A parameter violates a documented validity condition."""


class ConvergenceError(RuntimeError):
    """A series evaluation cannot converge for the requested argument."""


class NearZeroDenominator(ArithmeticError):
    """A denominator function is numerically zero (|value| <= 1e-13)."""


class ConsistencyError(RuntimeError):
    """Two independent evaluation paths disagree beyond tolerance."""
