"""Exception types shared across the package.

Three families matter to callers: malformed-input errors (bad field
parameters, mismatched carriers, broken tables), scale guards
(InfeasibleScale, ExtensionTooLarge), and InvariantViolation.  The last
one is special: it is raised when two procedures that a proved theorem
says must agree fail to do so, which is either a bug or a genuine
counterexample, and is never silently reconciled.
"""


class Error(Exception):
    """Base class for all errors raised by this package."""


class NonPrimeCharacteristic(Error):
    pass


class ReducibleModulus(Error):
    pass


class SpecMismatch(Error):
    pass


class DivisionByZero(Error, ZeroDivisionError):
    pass


class DimensionMismatch(Error):
    pass


class OutOfRange(Error):
    pass


class IncompleteTable(Error):
    pass


class InvalidRankTable(Error):
    pass


class NotSubmodular(Error):
    pass


class WrongNullity(Error):
    pass


class GroundMismatch(Error):
    pass


class ExtensionTooLarge(Error):
    pass


class InfeasibleScale(Error):
    pass


class InvariantViolation(Error):
    """A theorem-backed internal check failed: bug or counterexample."""

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


#: Errors that indicate a problem with caller-supplied data.
INPUT_ERRORS = (
    NonPrimeCharacteristic,
    ReducibleModulus,
    SpecMismatch,
    DivisionByZero,
    DimensionMismatch,
    OutOfRange,
    IncompleteTable,
    InvalidRankTable,
    NotSubmodular,
    WrongNullity,
    GroundMismatch,
)
