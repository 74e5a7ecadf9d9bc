"""Exception taxonomy shared across the package.

Everything raised deliberately by this package derives from ClausenError, so
callers can catch one type at the CLI boundary and map it to an exit code.
"""


class ClausenError(Exception):
    """Base class for all deliberate errors raised by this package."""


class PoleError(ClausenError):
    """Evaluation requested exactly at a pole of the function (e.g. gamma at 0, -1, ...)."""


class ParameterPoleError(PoleError):
    """A series parameter sits on a pole that is not cancelled by termination.

    Raised when a lower hypergeometric parameter is a nonpositive integer and
    no upper parameter terminates the series first.
    """


class RangeError(ClausenError):
    """Argument is outside the supported range of an evaluation route."""


class DomainError(ClausenError):
    """Inputs violate a documented domain restriction (convergence region, sign condition, ...)."""


class DivergentError(DomainError):
    """The requested series diverges for these parameters."""


class RemovableSingularityError(DomainError):
    """Parameters sit on a removable singularity; caller must pick a limit policy."""


class OperationCancelled(ClausenError):
    """Cooperative cancellation was requested via a callback during a long summation."""
