"""Multivariate polynomial GCD over Q.

Recursive content / primitive-part decomposition on a lowest-degree variable,
with the subresultant polynomial remainder sequence doing the univariate
work over the coefficient domain Q[remaining variables].
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce

from ratcont.corealg.poly import Poly

# fixed specialization values for the degree bound, so results stay deterministic
_SPECIAL = (3, -5, 7, 11, -13, 17, 19)


def _monomial_gcd(m: Poly, p: Poly) -> Poly:
    # gcd(c*x^e, p) is the largest monomial dividing every term of p
    (low, _), = m.items()
    for mono, _ in p.items():
        low = {g: min(k, mono.get(g, 0)) for g, k in low.items()}
    return Poly.monomial(low)


def _content(coeffs) -> Poly:
    return reduce(_gcd, coeffs, Poly.zero())


def _prem(a: list[Poly], b: list[Poly]) -> list[Poly]:
    """Pseudo-remainder of dense univariate coefficient lists (index = degree)."""
    r = list(a)
    db = len(b) - 1
    lcb = b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lcr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lcb for c in r]
        for i, bc in enumerate(b):
            r[i + shift] = r[i + shift] - lcr * bc
        while r and not r[-1]:
            r.pop()
        e -= 1
    if e > 0 and r:
        f = lcb ** e
        r = [c * f for c in r]
    return r


def _dense(p: Poly, var: str) -> list[Poly]:
    parts = p.as_univariate(var)
    n = max(parts) + 1
    return [parts.get(k, Poly.zero()) for k in range(n)]


def _univariate_gcd_degree(a: list[Fraction], b: list[Fraction]) -> int:
    while b:
        inv = 1 / b[-1]
        while len(a) >= len(b):
            q = a[-1] * inv
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[i + shift] -= q * c
            while a and not a[-1]:
                a.pop()
        a, b = b, a
    return len(a) - 1


def _degree_bound(pa: list[Poly], pb: list[Poly]) -> int:
    """Upper bound on the main-variable degree of gcd(pa, pb).

    Specializes the other variables at a point where both leading
    coefficients survive; the specialized gcd is then a multiple of the
    specialized true gcd, so its degree bounds the true one.
    """
    best = min(len(pa), len(pb)) - 1
    others = sorted({g for c in pa + pb for g in c.gens})
    for attempt in range(3):
        point = {g: _SPECIAL[(i + 2 * attempt) % len(_SPECIAL)] for i, g in enumerate(others)}
        ea = [Fraction(c.evaluate(point)) for c in pa]
        eb = [Fraction(c.evaluate(point)) for c in pb]
        if not ea[-1] or not eb[-1]:
            continue
        best = min(best, _univariate_gcd_degree(ea, eb))
        if best == 0:
            break
    return best


def _subresultant_last(a: list[Poly], b: list[Poly]) -> list[Poly]:
    """Last nonzero member of the subresultant PRS of ``a`` and ``b`` (deg a >= deg b)."""
    g = Poly.const(1)
    h = Poly.const(1)
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            return b
        if len(r) == 1:
            return r
        scale = g * h ** delta
        a, b = b, [c.exact_div(scale) for c in r]
        g = a[-1]
        if delta:
            h = (g ** delta).exact_div(h ** (delta - 1))


def _gcd(a: Poly, b: Poly) -> Poly:
    if not a:
        return b.primitive()
    if not b:
        return a.primitive()
    if a.is_constant() or b.is_constant():
        return Poly.const(1)
    if len(a) == 1:
        return _monomial_gcd(a, b)
    if len(b) == 1:
        return _monomial_gcd(b, a)
    m = _monomial_gcd(_monomial_gcd(Poly.monomial(dict(next(iter(a.items()))[0])), a), b)
    if not m.is_constant():
        return m * _gcd(a.exact_div(m), b.exact_div(m))
    only_a = [g for g in a.gens if g not in b.gens]
    if only_a:
        return _gcd(_content(a.as_univariate(only_a[0]).values()), b)
    only_b = [g for g in b.gens if g not in a.gens]
    if only_b:
        return _gcd(a, _content(b.as_univariate(only_b[0]).values()))
    # shared variables only; recurse on the one of lowest degree
    v = min(a.gens, key=lambda g: (max(a.degree(g), b.degree(g)), a.gens.index(g)))
    da, db = _dense(a, v), _dense(b, v)
    ca, cb = _content(da), _content(db)
    pa = [c.exact_div(ca) for c in da]
    pb = [c.exact_div(cb) for c in db]
    if len(pa) < len(pb):
        pa, pb = pb, pa
    c = _gcd(ca, cb)
    if _degree_bound(pa, pb) == 0:
        return c.primitive()
    last = _subresultant_last(pa, pb)
    if len(last) == 1:
        return c.primitive()
    prim = [x.exact_div(_content(last)) for x in last]
    g = Poly.from_univariate(v, dict(enumerate(prim)))
    return (c * g).primitive()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor, integer-primitive with positive leading coefficient.

    ``poly_gcd(0, 0)`` is ``0``; a gcd of nonzero constants is ``1``.
    """
    return _gcd(Poly.coerce(a), Poly.coerce(b))


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return Poly.zero()
    return (a * b).exact_div(poly_gcd(a, b)).primitive()
