"""Exception hierarchy for thinlaw."""


class ThinlawError(Exception):
    """Base class for every error raised by the package."""


class DomainError(ThinlawError, ValueError):
    """A parameter lies outside the domain of an operation."""


class EmptyOrNegative(DomainError):
    """Weights are all zero or contain a genuinely negative entry."""


class ZeroMean(DomainError):
    """The operation needs a pmf with strictly positive mean."""


class DeficitTooLarge(DomainError):
    """Truncation deficit too large for an information functional."""


class LengthMismatch(DomainError):
    """Vectors that must be the same length are not."""


class PreconditionFailed(ThinlawError):
    """A theorem check was called on inputs outside its hypotheses.

    ``report`` carries the failing :class:`~thinlaw.orders.OrderReport`
    when the precondition is an order relation.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class DegenerateSequence(ThinlawError):
    """A sequence needed for a log-log fit has nonpositive entries."""


class TooShort(ThinlawError):
    """A sequence is too short for the requested difference order."""


class ConsistencyError(ThinlawError, ArithmeticError):
    """Rounding produced a result outside what the mathematics allows."""
