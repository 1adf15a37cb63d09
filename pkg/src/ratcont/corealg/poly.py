"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` stores a dict mapping exponent tuples to nonzero
``Fraction`` coefficients.  The exponent tuple is aligned with ``gens``,
the variables that actually occur, sorted by a fixed global order
(natural sort on the variable name; the first variable is the largest in
every term order).  Because both the generator tuple and the term map are
canonical, equality is structural and bit-exact.

Example::

    x**2*y + 3   ->   gens ('x', 'y'), terms {(2, 1): 1, (0, 0): 3}
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

from ratcont.errors import DivisionError, IncompletePoint, ZeroDivisor

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_SPLIT_RE = re.compile(r"(\d+)")


def var_key(name: str) -> tuple:
    """Global variable order: natural sort, so ``x2`` precedes ``x10``."""
    parts = _SPLIT_RE.split(name)
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in parts if p)


def sort_vars(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=var_key))


def grevlex_key(exp: Exponent) -> tuple:
    return (sum(exp), tuple(-e for e in reversed(exp)))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"expected an exact rational coefficient, got {type(c).__name__}")


def _remap(terms: Mapping[Exponent, Fraction], old: tuple[str, ...], new: tuple[str, ...]):
    if old == new:
        return terms
    pos = [new.index(g) for g in old]
    n = len(new)
    out = {}
    for e, c in terms.items():
        ne = [0] * n
        for i, k in zip(pos, e):
            ne[i] = k
        out[tuple(ne)] = c
    return out


def _merge(g1: tuple[str, ...], g2: tuple[str, ...]) -> tuple[str, ...]:
    if g1 == g2:
        return g1
    if not g1:
        return g2
    if not g2:
        return g1
    return sort_vars(g1 + g2)


class Poly:
    """Immutable sparse polynomial over Q.

    Build polynomials with :meth:`var` and :meth:`const` and ordinary
    arithmetic, or parse them with :func:`ratcont.cli.expr.parse_poly`.
    """

    __slots__ = ("gens", "terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Scalar] | None = None, gens: Iterable[str] = ()):
        gens = tuple(gens)
        for g in gens:
            if not _NAME_RE.match(g):
                raise ValueError(f"invalid variable name {g!r}")
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate variable names")
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != len(gens) or any(k < 0 for k in e):
                raise ValueError(f"bad exponent {e} for variables {gens}")
            c = _as_fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        clean = {e: c for e, c in clean.items() if c}
        target = sort_vars(gens)
        self._init(target, _remap(clean, gens, target))

    def _init(self, gens: tuple[str, ...], terms: dict[Exponent, Fraction]) -> None:
        # drop generators that no longer occur
        if gens:
            used = [i for i in range(len(gens)) if any(e[i] for e in terms)]
            if len(used) != len(gens):
                gens = tuple(gens[i] for i in used)
                terms = {tuple(e[i] for i in used): c for e, c in terms.items()}
        self.gens = gens
        self.terms = terms
        self._hash = None

    @classmethod
    def _new(cls, gens: tuple[str, ...], terms: dict[Exponent, Fraction]) -> "Poly":
        obj = cls.__new__(cls)
        obj._init(gens, terms)
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls._new((), {})

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        c = _as_fraction(c)
        return cls._new((), {(): c} if c else {})

    @classmethod
    def var(cls, name: str) -> "Poly":
        if not _NAME_RE.match(name):
            raise ValueError(f"invalid variable name {name!r}")
        return cls._new((name,), {(1,): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: Scalar = 1) -> "Poly":
        exps = {v: k for v, k in exps.items() if k}
        gens = tuple(exps)
        return cls({tuple(exps[g] for g in gens): coeff}, gens)

    @classmethod
    def coerce(cls, value) -> "Poly":
        if isinstance(value, Poly):
            return value
        return cls.const(value)

    # -- basic queries ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.gens

    def constant_value(self) -> Fraction:
        """Value of a constant polynomial; raises if variables occur."""
        if self.gens:
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.gens), Fraction(0))

    @property
    def variables(self) -> tuple[str, ...]:
        return self.gens

    def __len__(self) -> int:
        return len(self.terms)

    def items(self) -> Iterator[tuple[dict[str, int], Fraction]]:
        """Yield ``(monomial, coefficient)`` pairs in descending grevlex order."""
        for e in self._sorted_exps():
            yield {g: k for g, k in zip(self.gens, e) if k}, self.terms[e]

    def _sorted_exps(self) -> list[Exponent]:
        return sorted(self.terms, key=grevlex_key, reverse=True)

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``.  The zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.gens:
            return 0
        i = self.gens.index(var)
        return max(e[i] for e in self.terms)

    def min_degree(self) -> int:
        """Smallest total degree of a term (-1 for zero)."""
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading(self) -> tuple[dict[str, int], Fraction]:
        """Leading monomial and coefficient under grevlex (the canonical order)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grevlex_key)
        return {g: k for g, k in zip(self.gens, e) if k}, self.terms[e]

    def lc(self) -> Fraction:
        return self.leading()[1] if self.terms else Fraction(0)

    # -- arithmetic -------------------------------------------------------

    def _align(self, other: "Poly"):
        gens = _merge(self.gens, other.gens)
        return gens, _remap(self.terms, self.gens, gens), _remap(other.terms, other.gens, gens)

    def __add__(self, other) -> "Poly":
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        gens, a, b = self._align(other)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._new(gens, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._new(self.gens, {e: -c for e, c in self.terms.items()})

    def __pos__(self) -> "Poly":
        return self

    def __sub__(self, other) -> "Poly":
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Poly.zero()
            return Poly._new(self.gens, {e: v * c for e, v in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.terms or not other.terms:
            return Poly.zero()
        gens, a, b = self._align(other)
        if all(c.denominator == 1 for c in a.values()) and all(c.denominator == 1 for c in b.values()):
            # integer coefficients: plain int arithmetic, one Fraction per output term
            a = {e: c.numerator for e, c in a.items()}
            b = {e: c.numerator for e, c in b.items()}
        out: dict[Exponent, Fraction] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return Poly._new(gens, {e: Fraction(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other) -> "Poly":
        # only division by a nonzero scalar stays inside Q[x]
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisor("division by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def exact_div(self, other) -> "Poly":
        """Return ``c`` with ``self == other * c``; raise if no such ``c`` exists."""
        other = Poly.coerce(other)
        if not other.terms:
            raise ZeroDivisor("exact division by the zero polynomial")
        if not self.terms:
            return self
        if not other.gens:
            return self * (1 / other.terms[()])
        if not set(other.gens) <= set(self.gens):
            raise DivisionError(f"{other} does not divide {self}")
        gens, rem, b = self._align(other)
        rem = dict(rem)
        lead_b = max(b)  # lex order is enough for exact division
        lc_b = b[lead_b]
        quot: dict[Exponent, Fraction] = {}
        while rem:
            lead = max(rem)
            diff = tuple(x - y for x, y in zip(lead, lead_b))
            if any(d < 0 for d in diff):
                raise DivisionError(f"{other} does not divide {self}")
            q = rem[lead] / lc_b
            quot[diff] = q
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(eb, diff))
                s = rem.get(e, 0) - q * cb
                if s:
                    rem[e] = s
                else:
                    del rem[e]
        return Poly._new(gens, quot)

    def divides(self, other) -> bool:
        try:
            Poly.coerce(other).exact_div(self)
        except (DivisionError, ZeroDivisor):
            return False
        return True

    # -- equality ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.gens == other.gens and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.gens, frozenset(self.terms.items())))
        return self._hash

    # -- structure --------------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational ``c`` such that ``self / c`` has coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        return Fraction(reduce(gcd, nums), reduce(lcm, dens))

    def primitive(self) -> "Poly":
        """Integer-primitive associate with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.lc() < 0:
            c = -c
        return self * (1 / c)

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self * (1 / self.lc())

    def as_univariate(self, var: str) -> dict[int, "Poly"]:
        """Split into ``{k: coefficient of var**k}``; coefficients are free of ``var``."""
        if var not in self.gens:
            return {0: self} if self.terms else {}
        i = self.gens.index(var)
        rest = self.gens[:i] + self.gens[i + 1:]
        parts: dict[int, dict[Exponent, Fraction]] = {}
        for e, c in self.terms.items():
            parts.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {k: Poly._new(rest, t) for k, t in parts.items()}

    @classmethod
    def from_univariate(cls, var: str, coeffs: Mapping[int, "Poly"]) -> "Poly":
        x = cls.var(var)
        out = cls.zero()
        for k, c in coeffs.items():
            if c:
                out = out + Poly.coerce(c) * x ** k
        return out

    def coefficient(self, var: str, k: int) -> "Poly":
        return self.as_univariate(var).get(k, Poly.zero())

    def diff(self, var: str) -> "Poly":
        if var not in self.gens:
            return Poly.zero()
        i = self.gens.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return Poly._new(self.gens, out)

    # -- substitution and evaluation -------------------------------------

    def substitute(self, sigma: Mapping[str, object]) -> "Poly":
        """Simultaneous substitution; unlisted variables map to themselves."""
        images = {g: Poly.coerce(sigma[g]) for g in self.gens if g in sigma}
        if not images:
            return self
        keep = tuple(g for g in self.gens if g not in images)
        keep_idx = [i for i, g in enumerate(self.gens) if g not in images]
        sub_idx = [(i, images[g]) for i, g in enumerate(self.gens) if g in images]
        powers: dict[tuple[int, int], Poly] = {}
        # group terms by the exponents of the substituted variables
        groups: dict[Exponent, dict[Exponent, Fraction]] = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i, _ in sub_idx)
            groups.setdefault(key, {})[tuple(e[i] for i in keep_idx)] = c
        out = Poly.zero()
        for key, rest in groups.items():
            factor = Poly._new(keep, dict(rest))
            for (i, img), k in zip(sub_idx, key):
                if k:
                    pw = powers.get((i, k))
                    if pw is None:
                        pw = powers[(i, k)] = img ** k
                    factor = factor * pw
            out = out + factor
        return out

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at a point; values may be any ring elements (Fraction, float, ...)."""
        missing = [g for g in self.gens if g not in point]
        if missing:
            raise IncompletePoint(f"no value for variable(s) {', '.join(missing)}")
        vals = [point[g] for g in self.gens]
        powers: dict[tuple[int, int], object] = {}
        total = 0
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    pw = powers.get((i, k))
                    if pw is None:
                        pw = powers[(i, k)] = vals[i] ** k
                    term = term * pw
            total = total + term
        return total

    # -- printing ---------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e in self._sorted_exps():
            c = self.terms[e]
            mono = "*".join(g if k == 1 else f"{g}^{k}" for g, k in zip(self.gens, e) if k)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


def poly_arith(op: str, a: Poly, b: Poly) -> Poly:
    """Dispatch ``add``, ``sub``, ``mul`` or ``exact_div`` on two polynomials."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "exact_div":
        return a.exact_div(b)
    raise ValueError(f"unknown polynomial operation {op!r}")


def substitute(p: Poly, sigma: Mapping[str, object]) -> Poly:
    return p.substitute(sigma)


def variables(*names: str) -> tuple[Poly, ...]:
    """Convenience: ``x, y = variables('x', 'y')``."""
    return tuple(Poly.var(n) for n in names)
