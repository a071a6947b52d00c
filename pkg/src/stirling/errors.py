"""Exception types shared across the package."""


class StirlingError(Exception):
    """Base class for all errors raised by :mod:`stirling`."""


class DomainError(StirlingError, ValueError):
    """Argument outside the domain of the requested operation."""


class PoleError(DomainError):
    """Argument lies on (or within tolerance of) a pole of ``z!``."""

    def __init__(self, z):
        super().__init__(f"pole: z = {z!r} is a negative integer")
        self.z = z


class ZeroTermError(StirlingError, ZeroDivisionError):
    """A series term is exactly zero and cannot serve as a remainder estimate."""


class AccuracyError(StirlingError):
    """Requested accuracy not reached within the work budget.

    ``estimate`` holds the best value available when the budget ran out.
    """

    def __init__(self, message, estimate=None, err_estimate=None):
        super().__init__(message)
        self.estimate = estimate
        self.err_estimate = err_estimate


class EvaluationError(StirlingError):
    """Every evaluation route failed for the given argument."""
