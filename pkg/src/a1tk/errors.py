"""Exception types raised by the toolkit."""


class A1Error(Exception):
    """Base class for all toolkit errors."""


class DomainError(A1Error, ValueError):
    """An argument lies outside the domain of the operation."""


class InvalidWeightError(A1Error, ValueError):
    """A weight violates its representation invariants."""


class RangeError(A1Error, ValueError):
    """An exponent is outside the admissible reverse Hölder range."""


class PreconditionError(A1Error, ValueError):
    """An input does not satisfy a documented precondition."""


class UnsupportedOperationError(A1Error, NotImplementedError):
    """The operation is not defined for this weight representation."""
