"""Rational functions over Q kept in lowest terms."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Mapping, Sequence

from ratcont.corealg.gcd import poly_gcd
from ratcont.corealg.poly import Poly, var_key
from ratcont.errors import IncompletePoint, RestrictionUndefined, ZeroDenominator


class Undefined:
    """Result of evaluating a rational function where its denominator vanishes."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Undefined"

    def __bool__(self) -> bool:
        return False


UNDEFINED = Undefined()


def _scale_to_integers(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    coeffs = list(num.terms.values()) + list(den.terms.values())
    d = reduce(lcm, (c.denominator for c in coeffs), 1)
    n = reduce(gcd, (c.numerator * (d // c.denominator) for c in coeffs), 0)
    s = Fraction(d, n)
    if den.lc() < 0:
        s = -s
    return num * s, den * s


class RatFun:
    """``num / den`` in lowest terms.

    The pair is scaled so that all coefficients are integers with no common
    factor and ``den`` has positive grevlex leading coefficient; zero is
    ``0/1``.  With that convention equality is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = Poly.coerce(num), Poly.coerce(den)
        if not den:
            raise ZeroDenominator("rational function with zero denominator")
        if not num:
            num, den = Poly.zero(), Poly.const(1)
        else:
            g = poly_gcd(num, den)
            if not g.is_constant():
                num, den = num.exact_div(g), den.exact_div(g)
            num, den = _scale_to_integers(num, den)
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFun":
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def coerce(cls, value) -> "RatFun":
        if isinstance(value, RatFun):
            return value
        return cls(value)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.num.gens) | set(self.den.gens), key=var_key))

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly, int, Fraction)):
            return self == RatFun(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other) -> "RatFun":
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun._raw(-self.num, self.den)

    def __sub__(self, other) -> "RatFun":
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFun":
        return RatFun.coerce(other) - self

    def __mul__(self, other) -> "RatFun":
        try:
            other = RatFun.coerce(other)
        except TypeError:
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFun":
        other = RatFun.coerce(other)
        if not other.num:
            raise ZeroDenominator("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFun":
        return RatFun.coerce(other) / self

    def __pow__(self, n: int) -> "RatFun":
        if n < 0:
            return RatFun(self.den ** -n, self.num ** -n)
        return RatFun._raw(self.num ** n, self.den ** n)

    def evaluate(self, point: Mapping[str, object]):
        return rat_evaluate(self, point)

    def substitute(self, sigma: Mapping[str, object]) -> "RatFun":
        """Substitute polynomials into numerator and denominator, then renormalize."""
        return RatFun(self.num.substitute(sigma), self.den.substitute(sigma))

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        num = str(self.num)
        if len(self.num) > 1:
            num = f"({num})"
        den = str(self.den)
        if len(self.den) > 1 or "*" in den or "/" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RatFun({str(self)!r})"


def rat_normalize(num, den) -> RatFun:
    """Lowest-terms representative of ``num/den``; raises ZeroDenominator if ``den == 0``."""
    return RatFun(num, den)


def rat_evaluate(f: RatFun, point: Mapping[str, Fraction]):
    """Value of the raw rational function, or ``UNDEFINED`` where its denominator vanishes.

    No continuous extension is attempted here.
    """
    missing = [v for v in f.variables if v not in point]
    if missing:
        raise IncompletePoint(f"no value for variable(s) {', '.join(missing)}")
    d = f.den.evaluate(point)
    if d == 0:
        return UNDEFINED
    return f.num.evaluate(point) / d


def iterated_restrict(f: RatFun, steps: Sequence[tuple[str, object]]) -> RatFun:
    """Restrict to ``var = value`` one coordinate at a time, cancelling in between.

    Each step puts ``f`` in lowest terms, substitutes one value and
    renormalizes.  The outcome can depend on the order of ``steps``.
    Raises :class:`RestrictionUndefined` (with the 0-based step index) when
    the reduced denominator becomes identically zero.
    """
    f = RatFun.coerce(f)
    for i, (var, value) in enumerate(steps):
        num = f.num.substitute({var: value})
        den = f.den.substitute({var: value})
        if not den:
            raise RestrictionUndefined(i, f"denominator {f.den} vanishes identically at {var} = {value} (step {i})")
        f = RatFun(num, den)
    return f
