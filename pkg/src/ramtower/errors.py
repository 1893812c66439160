"""Exception hierarchy shared by all ramtower modules."""


class RamtowerError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(RamtowerError):
    """An argument lies outside the domain [-1, oo)."""


class ValidationError(RamtowerError):
    """Input data violates a structural invariant."""


class UnsupportedInputError(ValidationError):
    """Input is valid but outside what the requested operation supports."""


class InvalidSubgroupError(ValidationError):
    """Supplied subgroup intersection orders are impossible."""


class InvalidTowerError(ValidationError):
    """Tower data violates the splice or sandwich constraints."""


class InvalidRamificationDataError(ValidationError):
    """Residue/ramification degree data is inconsistent."""


class InconsistencyError(RamtowerError):
    """Two computation paths that must agree did not.  Signals a bug."""


class NotStableError(RamtowerError):
    """No stability polynomial fits the supplied values.

    ``offenders`` lists (level, expected, actual) triples for the points
    that broke the fit.
    """

    def __init__(self, message, offenders=None):
        super().__init__(message)
        self.offenders = list(offenders or [])


class BudgetExceededError(RamtowerError):
    """Closure enumeration grew past the element budget."""
