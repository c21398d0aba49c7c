"""Exception hierarchy shared by every module."""


class HadpstError(Exception):
    """Base class for all library errors."""


class DomainError(HadpstError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class NotInCatalogError(DomainError):
    pass


class HypothesisError(DomainError):
    """A construction was asked to run on inputs violating its hypotheses."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class UnsupportedError(DomainError):
    pass


class RangeError(DomainError):
    pass


class CertificationError(HadpstError):
    """The Laplacian is not diagonalized by the supplied Hadamard matrix."""


class AlignmentError(CertificationError):
    """No column of the signed Hadamard matrix equals the all-ones vector."""


class CapacityError(HadpstError):
    pass


class NumericError(HadpstError, ArithmeticError):
    pass


class OracleMismatchError(NumericError):
    """The exact criterion and the floating-point oracle disagree."""


class HorizonError(HadpstError):
    """A bounded search ran out of budget; ``partial`` holds what was found."""

    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = list(partial)


class InvariantError(HadpstError, AssertionError):
    """An internal consistency check failed (indicates a bug or bad data)."""
