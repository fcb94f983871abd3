"""Exception types shared across the package."""


class QCMError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(QCMError, ValueError):
    """Malformed arguments: wrong shapes, out-of-range parameters, bad kinds."""


class DomainError(QCMError, ValueError):
    """Mathematically invalid input, e.g. a density matrix that is not PSD."""


class ObjectiveError(QCMError, ArithmeticError):
    """An objective evaluation produced a non-finite value."""
