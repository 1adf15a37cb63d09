"""Radical extension rings Q[x][u]/(u^k - m(x)).

Elements are stored as the unique reduced representative
``c_0 + c_1*u + ... + c_{k-1}*u^(k-1)`` with u-free coefficients.  This is
enough to compute exactly with a cube root such as ``u = (1 + z^2)^(1/3)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ratcont.corealg.poly import Poly
from ratcont.errors import DivisionError, RingMismatch, ZeroDivisor


@dataclass(frozen=True)
class RadicalRing:
    gen: str
    k: int
    modulus: Poly

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("radical exponent must be at least 2")
        if not self.modulus:
            raise ValueError("radical modulus must be nonzero")
        if self.gen in self.modulus.gens:
            raise ValueError(f"generator {self.gen} may not occur in the modulus")

    @property
    def base_variables(self) -> tuple[str, ...]:
        return self.modulus.gens

    @property
    def u(self) -> "RadPoly":
        return self.element(Poly.var(self.gen))

    def element(self, value) -> "RadPoly":
        """Reduce a polynomial (which may mention the generator) into the ring."""
        if isinstance(value, RadPoly):
            if value.ring != self:
                raise RingMismatch(f"element of {value.ring} used in {self}")
            return value
        p = Poly.coerce(value)
        coeffs = [Poly.zero()] * self.k
        mpow: dict[int, Poly] = {0: Poly.const(1)}
        for j, c in p.as_univariate(self.gen).items():
            q, r = divmod(j, self.k)
            if q not in mpow:
                mpow[q] = self.modulus ** q
            coeffs[r] = coeffs[r] + c * mpow[q]
        return RadPoly(self, tuple(coeffs))

    def __str__(self) -> str:
        return f"{self.gen}^{self.k} = {self.modulus}"


class RadPoly:
    """Element of a :class:`RadicalRing`; immutable."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: RadicalRing, coeffs):
        coeffs = tuple(Poly.coerce(c) for c in coeffs)
        if len(coeffs) != ring.k:
            raise ValueError(f"expected {ring.k} coefficients, got {len(coeffs)}")
        if any(ring.gen in c.gens for c in coeffs):
            raise ValueError("coefficients must be free of the radical generator")
        self.ring = ring
        self.coeffs = coeffs

    def _coerce(self, other) -> "RadPoly":
        if isinstance(other, RadPoly):
            if other.ring != self.ring:
                raise RingMismatch(f"cannot combine elements of {self.ring} and {other.ring}")
            return other
        if isinstance(other, (Poly, int, Fraction)):
            return self.ring.element(other)
        raise TypeError(f"cannot use {type(other).__name__} in a radical ring")

    def __add__(self, other) -> "RadPoly":
        other = self._coerce(other)
        return RadPoly(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "RadPoly":
        return RadPoly(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other) -> "RadPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RadPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RadPoly":
        other = self._coerce(other)
        k, m = self.ring.k, self.ring.modulus
        out = [Poly.zero()] * k
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                prod = a * b
                if i + j >= k:
                    # u^k = m
                    prod = prod * m
                out[(i + j) % k] = out[(i + j) % k] + prod
        return RadPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RadPoly":
        if n < 0:
            raise ValueError("negative powers are not ring elements")
        result = self.ring.element(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, RadPoly):
            return self.ring == other.ring and self.coeffs == other.coeffs
        if isinstance(other, (Poly, int, Fraction)):
            return self == self.ring.element(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not self

    def to_poly(self) -> Poly:
        u = Poly.var(self.ring.gen)
        return sum((c * u ** j for j, c in enumerate(self.coeffs)), Poly.zero())

    def substitute(self, sigma: Mapping[str, object]) -> "RadPoly":
        """Substitute ring elements (or polynomials) for base variables."""
        if self.ring.gen in sigma:
            raise ValueError("the radical generator cannot be substituted")
        u = self.ring.u
        out = self.ring.element(0)
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            point = {g: self._coerce(sigma.get(g, Poly.var(g))) for g in c.gens}
            out = out + self._coerce(c.evaluate(point)) * u ** j
        return out

    def __str__(self) -> str:
        return str(self.to_poly())

    def __repr__(self) -> str:
        return f"RadPoly({str(self)!r} mod {self.ring})"


def rad_arith(op: str, a: RadPoly, b: RadPoly) -> RadPoly:
    if isinstance(a, RadPoly) and isinstance(b, RadPoly) and a.ring != b.ring:
        raise RingMismatch(f"cannot combine elements of {a.ring} and {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown radical-ring operation {op!r}")


def multiplication_matrix(b: RadPoly) -> list[list[Poly]]:
    """Matrix of ``c -> b*c`` on coefficient vectors; column j is ``b*u^j``."""
    k = b.ring.k
    u = b.ring.u
    cols = [(b * u ** j).coeffs for j in range(k)]
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def _bareiss_det(rows: list[list[Poly]]) -> Poly:
    """Determinant by fraction-free elimination; every division is exact."""
    m = [list(r) for r in rows]
    n = len(m)
    sign, prev = 1, Poly.const(1)
    for col in range(n - 1):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Poly.zero()
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        for r in range(col + 1, n):
            for c in range(col + 1, n):
                m[r][c] = (p * m[r][c] - m[r][col] * m[col][c]).exact_div(prev)
        prev = p
    return sign * m[-1][-1]


def rad_exact_divide(a: RadPoly, b: RadPoly) -> RadPoly:
    """Return ``c`` with ``a == b*c``, solving the multiplication system by Cramer's rule."""
    if isinstance(a, RadPoly) and isinstance(b, RadPoly) and a.ring != b.ring:
        raise RingMismatch(f"cannot combine elements of {a.ring} and {b.ring}")
    ring = a.ring if isinstance(a, RadPoly) else b.ring
    a, b = ring.element(a), ring.element(b)
    if not b:
        raise ZeroDivisor("division by zero in a radical ring")
    mat = [list(row) for row in multiplication_matrix(b)]
    det = _bareiss_det(mat)
    if not det:
        raise DivisionError(f"{b} is a zero divisor in {ring}")
    sol = []
    for i in range(ring.k):
        swapped = [row[:i] + [rhs] + row[i + 1:] for row, rhs in zip(mat, a.coeffs)]
        try:
            sol.append(_bareiss_det(swapped).exact_div(det))
        except DivisionError:
            raise DivisionError(f"{b} does not divide {a} in {ring}") from None
    c = RadPoly(ring, sol)
    if b * c != a:
        raise DivisionError(f"{b} does not divide {a} in {ring}")
    return c
