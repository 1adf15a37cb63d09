"""Exception types raised across the package."""

from __future__ import annotations


class RatcontError(Exception):
    """Base class for every error raised by ratcont."""


class DivisionError(RatcontError, ArithmeticError):
    """Raised when an exact division has a nonzero remainder."""


class ZeroDivisor(RatcontError, ZeroDivisionError):
    """Raised on exact division by the zero polynomial."""


class ZeroDenominator(RatcontError, ZeroDivisionError):
    """Raised when a rational function is built with a zero denominator."""


class IncompletePoint(RatcontError, KeyError):
    """Raised when an evaluation point does not bind every variable."""

    def __str__(self) -> str:
        return Exception.__str__(self)


class RestrictionUndefined(RatcontError):
    """The denominator vanished identically during an iterated restriction."""

    def __init__(self, step: int, message: str = ""):
        self.step = step
        super().__init__(message or f"denominator vanishes identically at step {step}")


class RingMismatch(RatcontError, TypeError):
    """Raised when elements of different radical rings are combined."""


class BudgetExceeded(RatcontError):
    """Raised when Buchberger's algorithm exceeds its S-pair budget."""


class DenominatorVanishesOnVariety(RatcontError):
    """The reduced denominator lies in the ideal of the variety."""


class NotHomogeneous(RatcontError, ValueError):
    pass


class PrecisionLoss(RatcontError):
    """Too few p-adic digits survive an evaluation."""

    def __init__(self, digits: int, message: str = ""):
        self.digits = digits
        super().__init__(message or f"only {digits} p-adic digits survive")


class EmptyForm(RatcontError, ValueError):
    pass


class IncompatibleReps(RatcontError):
    """Two local representatives disagree modulo the ideal of the subvariety."""

    def __init__(self, i: int, j: int, residue: str):
        self.pair = (i, j)
        self.residue = residue
        super().__init__(f"local reps {i} and {j} are incompatible: p_i*q_j - p_j*q_i = {residue} mod I(Z)")


class BadProblem(RatcontError, ValueError):
    pass


class ParseError(RatcontError, ValueError):
    """Syntax error in an expression, with 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class UnsupportedExponent(ParseError):
    pass
