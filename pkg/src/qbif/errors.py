"""Exception types shared across the package."""


class QbifError(Exception):
    """Base class for all package errors."""


class InvalidArgument(QbifError, ValueError):
    """An argument violates a documented precondition."""


class ResourceLimitError(QbifError):
    """A configured size cap (degree, tuple count) would be exceeded."""


class NumericFailure(QbifError, ArithmeticError):
    """An iterative method did not converge.

    ``partial`` carries whatever the method had computed when it gave up.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotFound(QbifError, LookupError):
    """The requested object (cycle, validated root) does not exist."""


class InsufficientData(QbifError):
    """Too few samples to produce the requested statistic."""


class DegreeBoundExceeded(QbifError):
    """Interpolated coefficients did not decay at the assumed degree bound."""
