"""Exception hierarchy shared by every module."""

from __future__ import annotations


class CanonFormError(Exception):
    """Base class for all library errors."""


class FieldMismatch(CanonFormError):
    """Operands live over different fields."""


class DivisionByZero(CanonFormError, ZeroDivisionError):
    pass


class ParseError(CanonFormError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ZeroDenominator(ParseError):
    pass


class BothZero(CanonFormError, ValueError):
    pass


class NotCoprime(CanonFormError, ValueError):
    pass


class ConstantPolynomial(CanonFormError, ValueError):
    pass


class DegreeBoundExceeded(CanonFormError):
    """Rational factorization refused because a squarefree part is too large."""


class NonSquare(CanonFormError, ValueError):
    pass


class ShapeMismatch(CanonFormError, ValueError):
    pass


class Inconsistent(CanonFormError):
    """A linear system has no solution."""


class SingularMatrix(CanonFormError):
    pass


class NotInvariant(CanonFormError):
    pass


class DegeneratePairing(CanonFormError):
    """The Gram matrix of a duality split is singular."""


class NotAFactor(CanonFormError, ValueError):
    pass


class InternalInvariantViolated(CanonFormError, AssertionError):
    """A postcondition the algorithms guarantee did not hold."""
