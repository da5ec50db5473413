"""Exception types shared across the package."""


class RobustPMError(Exception):
    """Base class for all package errors."""


class MalformedInputError(RobustPMError, ValueError):
    """Input data violates a structural or numeric contract."""


class DomainError(RobustPMError, ValueError):
    """An operation was called outside its mathematical domain."""


class DimensionError(RobustPMError, ValueError):
    """Matrix dimensions do not agree."""


class CapacityError(RobustPMError, ValueError):
    """A requested enumeration, grid, or determinant exceeds a configured cap."""


class BracketError(RobustPMError, ValueError):
    """A margin bracket does not straddle the stability boundary."""

    def __init__(self, message, lo_verdict=None, hi_verdict=None):
        super().__init__(message)
        self.lo_verdict = lo_verdict
        self.hi_verdict = hi_verdict


class ConvergenceError(RobustPMError, ArithmeticError):
    """An iterative routine hit its iteration cap."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class PreconditionError(RobustPMError, ValueError):
    """A check's stated hypothesis does not hold for the given data."""
