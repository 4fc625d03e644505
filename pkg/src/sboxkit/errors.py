"""Exception types shared across the toolkit."""


class SboxkitError(Exception):
    """Base class for all toolkit errors."""


class ReducibleModulus(SboxkitError):
    """The supplied modulus polynomial is reducible over GF(2)."""


class DegreeMismatch(SboxkitError):
    """The supplied modulus does not have the requested degree."""


class UnsupportedDegree(SboxkitError):
    """The extension degree is outside the supported range / default table."""


class DivisionByZero(SboxkitError, ZeroDivisionError):
    """Multiplicative inverse of zero requested."""


class ZeroLinearCoefficient(SboxkitError):
    """x^2 + ax + b with a = 0; the quadratic solver needs a != 0."""


class NotCoprime(SboxkitError):
    """Frobenius shift k is not coprime to the field degree."""


class ThetaYieldsTrivialPair(SboxkitError):
    """theta = 1 collapses (alpha, beta) to (1, 1), which lies in GF(2)."""


class ZeroDirection(SboxkitError):
    """Difference direction a = 0 is not a valid input."""


class ZeroB(SboxkitError):
    """Output difference b = 0 is not a valid input here."""


class NotAPermutation(SboxkitError):
    """Operation requires a bijective table."""


class InvalidFamilyParams(SboxkitError):
    """Baseline family parameters fail their validity condition."""


class ScaleRefusal(SboxkitError):
    """Requested computation exceeds the desk-scale budget."""
