"""Exception types shared across the package."""


class SmithError(Exception):
    """Base class for errors raised by this package."""


class DimensionMismatch(SmithError):
    pass


class NotSquare(SmithError):
    pass


class NotMonic(SmithError):
    pass


class DegreeZero(SmithError):
    pass


class DegreeTooHigh(SmithError):
    pass


class EmptyInput(SmithError):
    pass


class UnsupportedField(SmithError):
    pass


class NotRegular(SmithError):
    """The matrix polynomial has identically zero determinant."""


class PrimeDoesNotDivideDet(SmithError):
    pass


class MultiplicityMismatch(SmithError):
    """Internal invariant failure: accepted exponents do not sum to the
    algebraic multiplicity.  Signals a bug, never emitted as a result."""


class PrimeMismatch(SmithError):
    pass


class NotUnimodular(SmithError):
    pass


class DivisibilityFailure(SmithError):
    pass


class FactorSetMismatch(SmithError):
    pass


class ShapeMismatch(SmithError):
    pass


class TooLarge(SmithError):
    pass


class BadFamilyParam(SmithError):
    pass


class ParseError(SmithError):
    pass
