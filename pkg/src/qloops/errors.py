"""Exception types raised across the package.

Input rejections derive from :class:`RejectedInput` (CLI exit code 2);
numerical verification failures derive from :class:`VerificationError`
(CLI exit code 3).
"""


class QLoopsError(Exception):
    """Base class for all package errors."""


class RejectedInput(QLoopsError, ValueError):
    pass


class VerificationError(QLoopsError, ArithmeticError):
    pass


class ShapeMismatch(RejectedInput):
    """Operands disagree in matrix size or covering denominator."""


class NonInvertibleLeadingTerm(RejectedInput):
    """No monomial normalization yields an invertible leading coefficient."""


class ValuationError(RejectedInput):
    """A series argument does not have the required valuation."""


class NotIntegralRepresentative(RejectedInput):
    """The loop is not an element of GL_n[[z]] with invertible constant term."""

    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry


class WindowTooShort(RejectedInput):
    pass


class SingularMatrix(RejectedInput):
    pass


class NotPolynomial(RejectedInput):
    pass


class NonCommutingPair(VerificationError):
    pass


class InconsistentResonanceGraph(VerificationError):
    pass


class ResonanceMismatch(VerificationError):
    pass


class NotConstantCocycle(VerificationError):
    pass


class VerificationFailed(VerificationError):
    pass
