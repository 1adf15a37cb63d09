"""Limits of rational functions along polynomial curves, and witness search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ratcont.corealg.poly import Poly, sort_vars
from ratcont.corealg.ratfun import RatFun
from ratcont.errors import IncompletePoint

REAL_ONE_SIDED = "real_one_sided"
REAL_TWO_SIDED = "real_two_sided"
VALUATION = "valuation"
SEMANTICS = (REAL_ONE_SIDED, REAL_TWO_SIDED, VALUATION)

FINITE = "Finite"
PLUS_INFINITY = "PlusInfinity"
MINUS_INFINITY = "MinusInfinity"
INFINITY = "Infinity"  # unsigned, valuation semantics only
UNDEFINED = "IdenticallyUndefined"


@dataclass(frozen=True)
class Curve:
    """``var = base[var] + components[var](t)`` with components vanishing at t = 0."""

    components: Mapping[str, Poly]
    base: Mapping[str, Fraction] = field(default_factory=dict)
    semantics: str = REAL_ONE_SIDED
    param: str = "t"

    def __post_init__(self):
        if self.semantics not in SEMANTICS:
            raise ValueError(f"unknown curve semantics {self.semantics!r}")
        comps, base = {}, {v: Fraction(c) for v, c in self.base.items()}
        for v, c in self.components.items():
            c = Poly.coerce(c)
            if set(c.gens) - {self.param}:
                raise ValueError(f"component for {v} may only involve {self.param}")
            const = c.constant_term()
            if const:
                # fold a constant term into the base point
                base[v] = base.get(v, Fraction(0)) + const
                c = c - const
            comps[v] = c
        for v in base:
            comps.setdefault(v, Poly.zero())
        object.__setattr__(self, "components", {v: comps[v] for v in sort_vars(comps)})
        object.__setattr__(self, "base", {v: base.get(v, Fraction(0)) for v in sort_vars(comps)})

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(self.components)

    def substitution(self) -> dict[str, Poly]:
        return {v: self.components[v] + self.base[v] for v in self.components}

    def reparametrize(self, power: int) -> "Curve":
        """Replace t by t**power."""
        t = Poly.var(self.param)
        comps = {v: c.substitute({self.param: t ** power}) for v, c in self.components.items()}
        return Curve(comps, self.base, self.semantics, self.param)

    def point_at(self, t) -> dict[str, object]:
        return {v: self.base[v] + c.evaluate({self.param: t}) for v, c in self.components.items()}

    def __str__(self) -> str:
        parts = ", ".join(f"{v}={c}" for v, c in self.components.items())
        base = ",".join(str(b) for b in self.base.values())
        return f"{parts} @ ({base})"


@dataclass(frozen=True)
class LimitResult:
    kind: str
    value: Fraction | None = None
    num_order: int | None = None
    den_order: int | None = None
    minus: "LimitResult | None" = None

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    def label(self) -> str:
        if self.kind == FINITE:
            return str(self.value)
        return {PLUS_INFINITY: "+oo", MINUS_INFINITY: "-oo", INFINITY: "oo", UNDEFINED: "undefined"}[self.kind]

    def same_limit(self, other: "LimitResult") -> bool:
        return self.kind == other.kind and self.value == other.value

    def __str__(self) -> str:
        if self.minus is not None:
            return f"{self.label()} (t->0+), {self.minus.label()} (t->0-)"
        return self.label()


def _order(p: Poly, param: str) -> tuple[int, Fraction]:
    parts = p.as_univariate(param)
    k = min(parts)
    return k, parts[k].constant_value()


def _compose(f: RatFun, gamma: Curve) -> tuple[Poly, Poly]:
    missing = [v for v in f.variables if v not in gamma.components]
    if missing:
        raise IncompletePoint(f"curve does not assign variable(s) {', '.join(missing)}")
    sub = gamma.substitution()
    return f.num.substitute(sub), f.den.substitute(sub)


def _one_side(a: int, ca: Fraction, b: int, cb: Fraction, side: str) -> LimitResult:
    if a > b:
        return LimitResult(FINITE, Fraction(0), a, b)
    if a == b:
        return LimitResult(FINITE, ca / cb, a, b)
    sign = 1 if ca / cb > 0 else -1
    if side == "minus" and (b - a) % 2:
        sign = -sign
    return LimitResult(PLUS_INFINITY if sign > 0 else MINUS_INFINITY, None, a, b)


def curve_limit(f: RatFun, gamma: Curve, side: str = "plus") -> LimitResult:
    """Limit of ``f`` along ``gamma`` as t -> 0, read off the t-adic leading terms.

    Real semantics use t -> 0+ (``side="minus"`` for t -> 0-); two-sided
    semantics attach the t -> 0- result as ``.minus``.  Valuation
    semantics never look at signs and report an unsigned infinity.
    """
    f = RatFun.coerce(f)
    num, den = _compose(f, gamma)
    if not den:
        return LimitResult(UNDEFINED)
    b, cb = _order(den, gamma.param)
    if not num:
        result = LimitResult(FINITE, Fraction(0), None, b)
        if gamma.semantics == REAL_TWO_SIDED:
            result = LimitResult(FINITE, Fraction(0), None, b, minus=result)
        return result
    a, ca = _order(num, gamma.param)
    if gamma.semantics == VALUATION:
        if a >= b:
            return _one_side(a, ca, b, cb, "plus")
        return LimitResult(INFINITY, None, a, b)
    if gamma.semantics == REAL_TWO_SIDED:
        plus = _one_side(a, ca, b, cb, "plus")
        minus = _one_side(a, ca, b, cb, "minus")
        return LimitResult(plus.kind, plus.value, a, b, minus=minus)
    if side not in ("plus", "minus"):
        raise ValueError("side must be 'plus' or 'minus'")
    return _one_side(a, ca, b, cb, side)


def two_sided_limit(f: RatFun, gamma: Curve) -> tuple[LimitResult, LimitResult]:
    plus = curve_limit(f, gamma, "plus")
    minus = curve_limit(f, gamma, "minus")
    return plus, minus


# -- floating point cross-check ---------------------------------------------

SAMPLE_TS = tuple(10.0 ** -k for k in range(1, 7))


def sample_along(f: RatFun, gamma: Curve, ts: Sequence[float] = SAMPLE_TS) -> list[float]:
    """Floating-point values of ``f`` at ``gamma(t)`` for each t."""
    out = []
    for t in ts:
        pt = {v: float(gamma.base[v]) + float(c.evaluate({gamma.param: t})) if c else float(gamma.base[v])
              for v, c in gamma.components.items()}
        d = f.den.evaluate(pt)
        out.append(float(f.num.evaluate(pt)) / float(d) if d else float("nan"))
    return out


def extrapolate_to_zero(ts: Sequence[float], values: Sequence[float]) -> float:
    """Neville extrapolation of samples ``values[i] = g(ts[i])`` to ``g(0)``."""
    p = list(values)
    n = len(p)
    for m in range(1, n):
        for i in range(n - m):
            p[i] = (ts[i + m] * p[i] - ts[i] * p[i + 1]) / (ts[i + m] - ts[i])
    return p[0]


def float_crosscheck(f: RatFun, gamma: Curve, limit: LimitResult, rel_tol: float = 1e-6) -> tuple[bool, float]:
    """Compare a finite limit with the extrapolated float samples; returns (ok, estimate)."""
    if not limit.is_finite:
        raise ValueError("float cross-check applies to finite limits only")
    vals = sample_along(f, gamma)
    est = extrapolate_to_zero(SAMPLE_TS, vals)
    target = float(limit.value)
    return abs(est - target) <= rel_tol * max(1.0, abs(target)), est


# -- discontinuity witnesses -------------------------------------------------


@dataclass(frozen=True)
class DiscontinuityWitness:
    point: Mapping[str, Fraction]
    curve_a: Curve
    curve_b: Curve
    limit_a: LimitResult
    limit_b: LimitResult


@dataclass(frozen=True)
class NotFound:
    """No witness within the enumeration budget.  This is not a continuity proof."""

    curves_tried: int
    undefined_curves: int
    limits: tuple[str, ...]
    note: str = "no witness within budget"


def monomial_curves(point: Mapping[str, Fraction], max_exp: int, coeffs: Iterable[Fraction],
                    param: str = "t") -> list[Curve]:
    """All curves x_i = point_i + c_i t^e_i (c_i in coeffs, 1 <= e_i <= max_exp, or x_i fixed).

    Sorted by total exponent, then exponent vector, then coefficients.
    """
    vars_ = sort_vars(point)
    coeffs = sorted({Fraction(c) for c in coeffs if c})
    t = Poly.var(param)
    choices = [(0, Fraction(0))] + [(e, c) for e in range(1, max_exp + 1) for c in coeffs]
    combos = [combo for combo in itertools.product(choices, repeat=len(vars_)) if any(e for e, _ in combo)]
    combos.sort(key=lambda combo: (sum(e for e, _ in combo), tuple(e for e, _ in combo), tuple(c for _, c in combo)))
    curves = []
    for combo in combos:
        comps = {v: (t ** e) * c if e else Poly.zero() for v, (e, c) in zip(vars_, combo)}
        curves.append(Curve(comps, {v: Fraction(point[v]) for v in vars_}, REAL_ONE_SIDED, param))
    return curves


def discontinuity_search(f: RatFun, point: Mapping[str, Fraction], max_exp: int = 3,
                         coeffs: Iterable[Fraction] = (-2, -1, 1, 2)) -> DiscontinuityWitness | NotFound:
    """First pair of enumerated monomial curves with different limits at ``point``.

    Curves along which ``f`` is identically undefined are skipped.  A
    :class:`NotFound` result only says that no witness exists within the budget.
    """
    f = RatFun.coerce(f)
    if max_exp < 1:
        raise ValueError("exponent budget must be at least 1")
    point = {v: Fraction(point.get(v, 0)) for v in set(point) | set(f.variables)}
    seen: list[tuple[Curve, LimitResult]] = []
    labels: set[str] = set()
    undefined = 0
    curves = monomial_curves(point, max_exp, coeffs)
    for curve in curves:
        lim = curve_limit(f, curve)
        if lim.kind == UNDEFINED:
            undefined += 1
            continue
        for other, other_lim in seen:
            if not other_lim.same_limit(lim):
                return DiscontinuityWitness(point, other, curve, other_lim, lim)
        if not seen:
            seen.append((curve, lim))
        labels.add(lim.label())
    return NotFound(len(curves), undefined, tuple(sorted(labels)))
