"""Exact positivity certificates and the degree criterion for continuity at the origin."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from ratcont.corealg.poly import Poly
from ratcont.corealg.radical import RadPoly
from ratcont.errors import NotHomogeneous, RingMismatch

Element = Union[Poly, RadPoly]


@dataclass(frozen=True)
class PositivityCertificate:
    """Claim ``target == sum(c * s**2 for c, s in squares) + sum(m * s**2 for m, s in side_terms)``.

    Square coefficients must be positive rationals.  Each side-term
    multiplier ``m`` is *assumed* nonnegative; the assumption is echoed in
    reports, never proven.
    """

    target: Element
    squares: tuple[tuple[Fraction, Element], ...] = ()
    side_terms: tuple[tuple[Element, Element], ...] = ()
    assumptions: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "squares", tuple((Fraction(c), s) for c, s in self.squares))
        object.__setattr__(self, "side_terms", tuple(tuple(t) for t in self.side_terms))
        object.__setattr__(self, "assumptions", tuple(self.assumptions))


def _ring(cert: PositivityCertificate):
    rings = {x.ring for x in _elements(cert) if isinstance(x, RadPoly)}
    if len(rings) > 1:
        raise RingMismatch("certificate mixes several radical rings")
    return rings.pop() if rings else None


def _elements(cert: PositivityCertificate):
    yield cert.target
    for _, s in cert.squares:
        yield s
    for m, s in cert.side_terms:
        yield m
        yield s


def certificate_residue(cert: PositivityCertificate) -> Element:
    """``target`` minus the claimed decomposition, expanded exactly."""
    ring = _ring(cert)
    lift = ring.element if ring is not None else Poly.coerce
    residue = lift(cert.target)
    for c, s in cert.squares:
        s = lift(s)
        residue = residue - s * s * c
    for m, s in cert.side_terms:
        s = lift(s)
        residue = residue - lift(m) * s * s
    return residue


def verify_positivity_certificate(cert: PositivityCertificate) -> bool:
    """True iff every square coefficient is positive and the identity holds exactly."""
    if any(c <= 0 for c, _ in cert.squares):
        return False
    return not certificate_residue(cert)


def side_assumptions(cert: PositivityCertificate) -> list[str]:
    """Nonnegativity assumptions the certificate relies on, as text."""
    out = [f"{m} >= 0" for m, _ in cert.side_terms]
    out.extend(cert.assumptions)
    return out


def certificate_report(cert: PositivityCertificate) -> dict:
    residue = certificate_residue(cert)
    return {
        "target": str(cert.target),
        "identity_holds": not residue,
        "residue": str(residue),
        "positive_coefficients": all(c > 0 for c, _ in cert.squares),
        "assumed": side_assumptions(cert),
        "valid": verify_positivity_certificate(cert),
    }


CONTINUOUS_AT_ORIGIN = "ContinuousAtOrigin"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ContinuityConclusion:
    verdict: str
    value: Fraction | None = None
    degree_gap: int | None = None
    reason: str = ""

    @property
    def continuous(self) -> bool:
        return self.verdict == CONTINUOUS_AT_ORIGIN


def pure_power_certificate(q: Poly) -> PositivityCertificate:
    """Certificate ``q = sum c_i * (x_i^m)^2`` for ``q`` a positive combination of even pure powers."""
    squares = []
    for mono, c in q.items():
        if len(mono) != 1:
            raise ValueError(f"{q} is not a combination of pure powers")
        (v, k), = mono.items()
        if k % 2:
            raise ValueError(f"{q} has an odd power of {v}")
        squares.append((c, Poly.monomial({v: k // 2})))
    return PositivityCertificate(q, tuple(squares))


def _covers_all_variables(cert: PositivityCertificate, variables: Sequence[str], half: int) -> bool:
    # q >= c * sum x_i^(2m) needs the pure power x_i^m among the squares for every variable
    bases = set()
    for _, s in cert.squares:
        if isinstance(s, Poly) and len(s) == 1:
            (mono, _), = s.items()
            if len(mono) == 1:
                (v, k), = mono.items()
                if k == half:
                    bases.add(v)
    return set(variables) <= bases


def continuity_at_origin_by_degree(p: Poly, q: Poly, cert: PositivityCertificate) -> ContinuityConclusion:
    """Degree test: ``p/q`` tends to 0 at the origin if ``q`` is positive definite and every term of ``p`` has degree > deg q.

    ``q`` must be homogeneous.  Positive definiteness comes from ``cert``:
    it must verify, have no side terms, and contain ``x_i^(deg q / 2)`` as a
    square for every variable.
    """
    p, q = Poly.coerce(p), Poly.coerce(q)
    if not q or not q.is_homogeneous():
        raise NotHomogeneous(f"{q} is not a nonzero homogeneous polynomial")
    d = q.degree()
    if isinstance(cert.target, RadPoly) or cert.target != q:
        return ContinuityConclusion(INCONCLUSIVE, reason="certificate is not about the denominator")
    if not verify_positivity_certificate(cert):
        return ContinuityConclusion(INCONCLUSIVE, reason="certificate does not verify")
    variables = set(p.gens) | set(q.gens)
    if cert.side_terms or d % 2 or not _covers_all_variables(cert, variables, d // 2):
        return ContinuityConclusion(INCONCLUSIVE, reason="certificate does not show the denominator is positive definite")
    if not p:
        return ContinuityConclusion(CONTINUOUS_AT_ORIGIN, Fraction(0), None, "numerator is zero")
    gap = p.min_degree() - d
    if gap > 0:
        return ContinuityConclusion(CONTINUOUS_AT_ORIGIN, Fraction(0), gap,
                                    f"every term of the numerator has degree >= {p.min_degree()} > {d}")
    return ContinuityConclusion(INCONCLUSIVE, None, gap, f"numerator has a term of degree {p.min_degree()} <= {d}")
