"""Truncated p-adic numbers with absolute-precision tracking, and rational-function evaluation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ratcont.corealg.ratfun import UNDEFINED, RatFun
from ratcont.errors import IncompletePoint, PrecisionLoss


def valuation(x: Fraction | int, p: int) -> float | int:
    """p-adic valuation of an exact rational (``inf`` for zero)."""
    x = Fraction(x)
    if not x:
        return float("inf")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _check_prime(p: int) -> None:
    if p < 2 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not a prime")


@dataclass(frozen=True)
class PAdic:
    """A p-adic number known modulo ``p**prec`` (``prec=None`` means exact).

    ``rep`` is an exact rational representative.  Arithmetic propagates the
    absolute precision with the usual first-order bounds.
    """

    p: int
    rep: Fraction
    prec: int | None = None

    @classmethod
    def from_parts(cls, p: int, unit: int | Fraction, val: int, precision: int) -> "PAdic":
        """``p**val * unit`` known to ``precision`` absolute digits."""
        _check_prime(p)
        if precision < 1:
            raise ValueError("precision must be at least one digit")
        unit = Fraction(unit)
        if not unit or valuation(unit, p) != 0:
            raise ValueError(f"{unit} is not a {p}-adic unit")
        return cls(p, unit * Fraction(p) ** val, precision)

    @classmethod
    def from_rational(cls, p: int, x: Fraction | int, precision: int | None = None) -> "PAdic":
        return cls(p, Fraction(x), precision)

    @property
    def val(self) -> float | int:
        """Valuation of the number, or its precision when indistinguishable from zero."""
        v = valuation(self.rep, self.p)
        if self.prec is not None and v >= self.prec:
            return self.prec
        return v

    def is_zero(self) -> bool:
        return valuation(self.rep, self.p) >= (self.prec if self.prec is not None else float("inf"))

    def _lift(self, other) -> "PAdic":
        if isinstance(other, PAdic):
            if other.p != self.p:
                raise ValueError("cannot mix different primes")
            return other
        return PAdic(self.p, Fraction(other), None)

    def __add__(self, other) -> "PAdic":
        other = self._lift(other)
        return PAdic(self.p, self.rep + other.rep, _min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self) -> "PAdic":
        return PAdic(self.p, -self.rep, self.prec)

    def __sub__(self, other) -> "PAdic":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "PAdic":
        return self._lift(other) - self

    def __mul__(self, other) -> "PAdic":
        other = self._lift(other)
        prec = _min(_plus(self.prec, other.val), _plus(other.prec, self.val))
        return PAdic(self.p, self.rep * other.rep, prec)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PAdic":
        result = PAdic(self.p, Fraction(1), None)
        for _ in range(n):
            result = result * self
        return result

    def capped(self, prec: int) -> "PAdic":
        return PAdic(self.p, self.rep, _min(self.prec, prec))


def _min(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _plus(a, b):
    return None if a is None else a + b


@dataclass(frozen=True)
class PAdicValue:
    """Result of a p-adic evaluation: ``p**valuation * unit`` with ``digits`` significant digits.

    A value indistinguishable from zero has ``is_zero`` set, ``unit == 0``
    and ``valuation`` equal to its absolute precision.
    """

    p: int
    valuation: int
    unit: int
    digits: int
    is_zero: bool = False

    @property
    def absolute_precision(self) -> int:
        return self.valuation + (0 if self.is_zero else self.digits)

    def agrees_with(self, x: Fraction | int) -> bool:
        """True if the exact rational ``x`` is consistent with this value."""
        x = Fraction(x)
        if self.is_zero:
            return valuation(x, self.p) >= self.valuation
        if valuation(x, self.p) != self.valuation:
            return False
        return _unit_digits(x / Fraction(self.p) ** self.valuation, self.p, self.digits) == self.unit

    def __str__(self) -> str:
        if self.is_zero:
            return f"O({self.p}^{self.valuation})"
        return f"{self.p}^{self.valuation} * {self.unit} + O({self.p}^{self.absolute_precision})"


def _unit_digits(u: Fraction, p: int, digits: int) -> int:
    mod = p ** digits
    return u.numerator * pow(u.denominator, -1, mod) % mod


def padic_evaluate(f: RatFun, point: Mapping[str, PAdic], min_digits: int = 1):
    """Evaluate ``f`` at p-adic inputs.

    Each input is known modulo ``p**N``; numerator and denominator values
    are never trusted beyond that working precision ``N`` (the largest
    input precision).  Returns ``UNDEFINED`` when the denominator is
    indistinguishable from zero.  For p-integral data the quotient keeps
    ``N - val(den)`` significant digits; :class:`PrecisionLoss` is raised
    when fewer than ``min_digits`` survive.
    """
    f = RatFun.coerce(f)
    missing = [v for v in f.variables if v not in point]
    if missing:
        raise IncompletePoint(f"no value for variable(s) {', '.join(missing)}")
    # the prime and working precision come from every supplied input, so constants work too
    values = list(point.values())
    if not values:
        raise ValueError("p-adic evaluation needs at least one p-adic input")
    p = values[0].p
    if any(x.p != p for x in values):
        raise ValueError("all inputs must use the same prime")
    precs = [x.prec for x in values if x.prec is not None]
    if not precs:
        raise ValueError("at least one input must carry a finite precision")
    work = max(precs)
    sub = {v: point[v] for v in f.variables}
    num = _as_padic(f.num.evaluate(sub), p).capped(work)
    den = _as_padic(f.den.evaluate(sub), p).capped(work)
    if den.is_zero():
        return UNDEFINED
    vd = den.val
    if num.is_zero():
        return PAdicValue(p, num.prec - vd, 0, 0, True)
    vn = num.val
    abs_prec = min(num.prec - vd, den.prec + vn - 2 * vd)
    v = vn - vd
    digits = abs_prec - v
    if digits < min_digits:
        raise PrecisionLoss(max(digits, 0))
    return PAdicValue(p, v, _unit_digits(num.rep / den.rep / Fraction(p) ** v, p, digits), digits)


def _as_padic(x, p: int) -> PAdic:
    return x if isinstance(x, PAdic) else PAdic(p, Fraction(x), None)
