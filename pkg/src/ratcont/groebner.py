"""Gröbner bases, normal forms and restriction of rational functions to subvarieties.

Buchberger's algorithm with the Gebauer–Möller pair criteria and the
normal selection strategy.  Ideals here are small (a handful of
generators in at most four or five variables), so the implementation
works directly on ``{exponent tuple: Fraction}`` dicts.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ratcont.corealg.poly import Poly, sort_vars
from ratcont.corealg.ratfun import RatFun
from ratcont.errors import BudgetExceeded, DenominatorVanishesOnVariety

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 100_000

Exp = tuple[int, ...]
Dict = dict[Exp, Fraction]


@dataclass(frozen=True)
class TermOrder:
    """Monomial order; ``variables[0]`` is the largest variable."""

    kind: str = "grevlex"
    variables: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex"):
            raise ValueError(f"unknown term order {self.kind!r}")
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variables in term order")

    def key(self, e: Exp):
        if self.kind == "lex":
            return e
        return _grevlex_key(e)

    def extended(self, extra: Iterable[str]) -> tuple[str, ...]:
        """Order variables followed by any further variables (smallest, natural order)."""
        rest = [v for v in sort_vars(extra) if v not in self.variables]
        return self.variables + tuple(rest)


@lru_cache(maxsize=1 << 16)
def _grevlex_key(e: Exp):
    return (sum(e), tuple(-k for k in reversed(e)))


def lex(*variables: str) -> TermOrder:
    return TermOrder("lex", variables)


def grevlex(*variables: str) -> TermOrder:
    return TermOrder("grevlex", variables)


@dataclass(frozen=True)
class Ideal:
    """Ideal given by generators; zero generators are dropped (no generators = zero ideal)."""

    generators: tuple[Poly, ...]
    variables: tuple[str, ...] = ()

    def __post_init__(self):
        gens = tuple(Poly.coerce(g) for g in self.generators)
        object.__setattr__(self, "generators", tuple(g for g in gens if g))
        declared = tuple(self.variables)
        extra = sort_vars(v for g in self.generators for v in g.gens if v not in declared)
        object.__setattr__(self, "variables", declared + extra)

    @classmethod
    def of(cls, *generators) -> "Ideal":
        return cls(tuple(Poly.coerce(g) for g in generators))

    def is_zero(self) -> bool:
        return not self.generators


def _to_dict(p: Poly, vars_: Sequence[str]) -> Dict:
    pos = [vars_.index(g) for g in p.gens]
    n = len(vars_)
    out = {}
    for e, c in p.terms.items():
        ne = [0] * n
        for i, k in zip(pos, e):
            ne[i] = k
        out[tuple(ne)] = c
    return out


def _from_dict(d: Dict, vars_: Sequence[str]) -> Poly:
    return Poly(d, tuple(vars_)) if d else Poly.zero()


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Exp, b: Exp) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def _lead(d: Dict, key) -> Exp:
    return max(d, key=key)


def _reduce(f: Dict, basis: list[tuple[Exp, Dict]], key) -> Dict:
    """Full multivariate division remainder of ``f`` by monic ``basis`` entries."""
    p = dict(f)
    rem: Dict = {}
    while p:
        lm = max(p, key=key)
        c = p[lm]
        for glm, g in basis:
            if _divides(glm, lm):
                shift = tuple(x - y for x, y in zip(lm, glm))
                for ge, gc in g.items():
                    e = tuple(x + y for x, y in zip(ge, shift))
                    s = p.get(e, 0) - c * gc
                    if s:
                        p[e] = s
                    else:
                        p.pop(e, None)
                break
        else:
            rem[lm] = c
            del p[lm]
    return rem


def _monic(d: Dict, key) -> tuple[Exp, Dict]:
    lm = max(d, key=key)
    c = d[lm]
    if c == 1:
        return lm, d
    return lm, {e: v / c for e, v in d.items()}


def _spoly(a: tuple[Exp, Dict], b: tuple[Exp, Dict]) -> Dict:
    (la, fa), (lb, fb) = a, b
    m = _lcm(la, lb)
    sa = tuple(x - y for x, y in zip(m, la))
    sb = tuple(x - y for x, y in zip(m, lb))
    out: Dict = {}
    for e, c in fa.items():
        out[tuple(x + y for x, y in zip(e, sa))] = c
    for e, c in fb.items():
        k = tuple(x + y for x, y in zip(e, sb))
        s = out.get(k, 0) - c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    ideal: Ideal
    order: TermOrder
    basis: tuple[Poly, ...]
    spairs: int = 0
    _vars: tuple[str, ...] = field(default=(), repr=False, compare=False)
    _dicts: tuple = field(default=(), repr=False, compare=False)

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0] == 1

    def is_zero(self) -> bool:
        return not self.basis

    def leading_monomials(self) -> list[dict[str, int]]:
        return [dict(zip(self._vars, lm)) for lm, _ in self._dicts]

    def __iter__(self):
        return iter(self.basis)

    def __len__(self) -> int:
        return len(self.basis)


def _update(polys, G: list[int], B: list[tuple[int, int]], h: int):
    """Gebauer–Möller installation of the new basis element ``h``."""
    lh = polys[h][0]
    C = [(h, g) for g in G]
    D: list[tuple[int, int]] = []
    while C:
        pair = C.pop(0)
        lg = polys[pair[1]][0]
        m = _lcm(lh, lg)
        if _coprime(lh, lg) or not any(
            _divides(_lcm(lh, polys[q[1]][0]), m) for q in C + D
        ):
            D.append(pair)
    E = [(a, b) for a, b in D if not _coprime(lh, polys[b][0])]
    B_new = []
    for a, b in B:
        la, lb = polys[a][0], polys[b][0]
        m = _lcm(la, lb)
        if _divides(lh, m) and _lcm(la, lh) != m and _lcm(lb, lh) != m:
            continue
        B_new.append((a, b))
    B_new.extend(E)
    G_new = [g for g in G if not _divides(lh, polys[g][0])]
    G_new.append(h)
    return G_new, B_new


def buchberger(ideal: Ideal | Sequence[Poly], order: TermOrder | None = None,
               budget: int = DEFAULT_BUDGET) -> GroebnerBasis:
    """Reduced Gröbner basis of ``ideal`` under ``order`` (default grevlex).

    Raises :class:`BudgetExceeded` once more than ``budget`` S-pairs have
    been reduced.  The output is independent of the generator order.
    """
    if not isinstance(ideal, Ideal):
        ideal = Ideal(tuple(Poly.coerce(g) for g in ideal))
    order = order or TermOrder("grevlex", ideal.variables)
    vars_ = order.extended(ideal.variables)
    key = order.key
    if not ideal.generators:
        return GroebnerBasis(ideal, order, (), 0, vars_, ())

    polys: list[tuple[Exp, Dict]] = []
    G: list[int] = []
    B: list[tuple[int, int]] = []
    for g in ideal.generators:
        d = _reduce(_to_dict(g, vars_), [polys[i] for i in G], key)
        if d:
            polys.append(_monic(d, key))
            G, B = _update(polys, G, B, len(polys) - 1)

    count = 0
    unit = any(not any(lm) for lm, _ in polys)
    while B and not unit:
        # normal strategy: smallest lcm first
        B.sort(key=lambda ab: key(_lcm(polys[ab[0]][0], polys[ab[1]][0])))
        a, b = B.pop(0)
        count += 1
        if count > budget:
            raise BudgetExceeded(f"more than {budget} S-pairs reduced")
        h = _reduce(_spoly(polys[a], polys[b]), [polys[i] for i in G], key)
        if h:
            polys.append(_monic(h, key))
            G, B = _update(polys, G, B, len(polys) - 1)
            if not any(polys[-1][0]):
                unit = True

    if unit:
        one = (tuple([0] * len(vars_)), {tuple([0] * len(vars_)): Fraction(1)})
        reduced = [one]
    else:
        # G already has pairwise non-divisible leading monomials
        minimal = [polys[i] for i in G]
        reduced = []
        for i, p in enumerate(minimal):
            others = minimal[:i] + minimal[i + 1:]
            reduced.append(_monic(_reduce(p[1], others, key), key))
        reduced.sort(key=lambda p: key(p[0]), reverse=True)
    basis = tuple(_from_dict(d, vars_) for _, d in reduced)
    logger.debug("groebner basis of %d generators: %d elements, %d S-pairs", len(ideal.generators), len(basis), count)
    return GroebnerBasis(ideal, order, basis, count, vars_, tuple(reduced))


def _dicts_for(gb: GroebnerBasis, p: Poly):
    extra = [g for g in p.gens if g not in gb._vars]
    if not extra:
        return gb._vars, list(gb._dicts)
    vars_ = gb._vars + sort_vars(extra)
    pad = (0,) * len(extra)
    return vars_, [(lm + pad, {e + pad: c for e, c in d.items()}) for lm, d in gb._dicts]


def normal_form(p: Poly, gb: GroebnerBasis) -> Poly:
    """Unique remainder of ``p`` modulo the basis; zero iff ``p`` lies in the ideal."""
    p = Poly.coerce(p)
    if not p or not gb.basis:
        return p
    vars_, basis = _dicts_for(gb, p)
    return _from_dict(_reduce(_to_dict(p, vars_), basis, gb.order.key), vars_)


def ideal_member(p: Poly, gb: GroebnerBasis) -> bool:
    return not normal_form(p, gb)


def restrict_to_variety(f: RatFun, gb: GroebnerBasis) -> RatFun:
    """Generic restriction of ``f`` to ``V(I)`` via normal forms of numerator and denominator.

    The answer describes ``f`` on the dense open part of ``V(I)`` where the
    reduced denominator does not vanish, and depends on the representative
    of ``f``.  Raises :class:`DenominatorVanishesOnVariety` when the
    denominator lies in the ideal.
    """
    f = RatFun.coerce(f)
    if gb.is_unit():
        raise ValueError("the unit ideal defines the empty variety")
    den = normal_form(f.den, gb)
    if not den:
        raise DenominatorVanishesOnVariety(f"denominator {f.den} lies in the ideal")
    return RatFun(normal_form(f.num, gb), den)


# -- hereditary rationality along a chain of subvarieties --------------------

GENERICALLY_REGULAR = "GenericallyRegular"
NO_REPRESENTATIVE = "NoRepresentativeFound"


@dataclass(frozen=True)
class Stratification:
    """Chain of ideals ``I(X_0) ⊇ I(X_1) ⊇ ... ⊇ I(X_m)``.

    ``paths`` optionally gives, per stratum index, a sequence of ideals to
    restrict through (largest variety first, ending with the stratum).
    """

    chain: tuple[Ideal, ...]
    paths: Mapping[int, tuple[Ideal, ...]] = field(default_factory=dict)
    order: TermOrder | None = None

    def __post_init__(self):
        object.__setattr__(self, "chain", tuple(self.chain))
        if not self.chain:
            raise ValueError("a stratification needs at least one stratum")

    def ambient_order(self) -> TermOrder:
        if self.order is not None:
            return self.order
        vars_ = set()
        for I in self.chain:
            vars_.update(I.variables)
        return TermOrder("grevlex", sort_vars(vars_))

    def check_inclusions(self, budget: int = DEFAULT_BUDGET) -> list[str]:
        """Generators of I(X_{i+1}) that are missing from I(X_i), as messages."""
        order = self.ambient_order()
        problems = []
        for i in range(len(self.chain) - 1):
            gb = buchberger(self.chain[i], order, budget)
            for g in self.chain[i + 1].generators:
                if not ideal_member(g, gb):
                    problems.append(f"generator {g} of stratum {i + 1} is not in I(X_{i})")
        return problems


@dataclass(frozen=True)
class StratumVerdict:
    index: int
    verdict: str
    value: RatFun | None
    route: str
    detail: str = ""


@dataclass(frozen=True)
class StratificationReport:
    strata: tuple[StratumVerdict, ...]
    inclusion_problems: tuple[str, ...] = ()

    @property
    def overall(self) -> bool:
        return not self.inclusion_problems and all(s.verdict == GENERICALLY_REGULAR for s in self.strata)


def _restrict_along(f: RatFun, ideals: Sequence[Ideal], order: TermOrder, budget: int) -> RatFun:
    for I in ideals:
        f = restrict_to_variety(f, buchberger(I, order, budget))
    return f


def _describe(ideals: Sequence[Ideal]) -> str:
    return " -> ".join("V(" + ", ".join(str(g) for g in I.generators) + ")" if I.generators else "ambient"
                       for I in ideals)


def check_stratified_regularity(f: RatFun, s: Stratification, budget: int = DEFAULT_BUDGET) -> StratificationReport:
    """Look for a generically regular restriction of ``f`` to every stratum.

    Routes tried per stratum, first success wins: direct restriction, the
    user-supplied path for that index, then descent through the chain from
    the ambient variety.  A pass certifies regularity on a dense open subset
    of each stratum only.
    """
    f = RatFun.coerce(f)
    order = s.ambient_order()
    verdicts = []
    for i, I in enumerate(s.chain):
        routes = [(I,)]
        if i in s.paths:
            routes.append(tuple(s.paths[i]))
        descent = tuple(reversed(s.chain[i:-1]))
        if len(descent) > 1:
            routes.append(descent)
        failures = []
        for route in routes:
            try:
                value = _restrict_along(f, route, order, budget)
            except DenominatorVanishesOnVariety as exc:
                failures.append(f"{_describe(route)}: {exc}")
                continue
            verdicts.append(StratumVerdict(i, GENERICALLY_REGULAR, value, _describe(route)))
            break
        else:
            verdicts.append(StratumVerdict(i, NO_REPRESENTATIVE, None, "", "; ".join(failures)))
    return StratificationReport(tuple(verdicts), tuple(s.check_inclusions(budget)))
