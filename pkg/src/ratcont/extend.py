"""Extending a regular function from a subvariety to the ambient affine space.

Given local representatives ``f = p_i/q_i`` with ``q_i(z_i) != 0`` and
generators ``q_{m+1}, ..., q_r`` of the ideal of ``Z``, the extension is

    F = sum_i G_i(q_1, ..., q_r) * p_i  /  G(q_1, ..., q_r)

where ``G = sum_i G_i * x_i`` is a form whose only rational zero is the
origin (``G = sum x_i^2`` over a formally real field) and ``p_i := q_i``
for the ideal generators.  ``F`` is regular wherever the ``q_i`` have no
common zero and restricts to ``f`` on ``Z``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from ratcont.corealg.poly import Poly
from ratcont.corealg.ratfun import UNDEFINED, RatFun
from ratcont.errors import BadProblem, EmptyForm, IncompatibleReps
from ratcont.groebner import DEFAULT_BUDGET, Ideal, TermOrder, buchberger, normal_form


@dataclass(frozen=True)
class LocalRep:
    """``f = p/q`` near the rational point ``point`` of Z, with ``q(point) != 0``."""

    point: Mapping[str, Fraction]
    p: Poly
    q: Poly

    def __post_init__(self):
        object.__setattr__(self, "point", {v: Fraction(c) for v, c in self.point.items()})
        object.__setattr__(self, "p", Poly.coerce(self.p))
        object.__setattr__(self, "q", Poly.coerce(self.q))


@dataclass(frozen=True)
class ExtensionProblem:
    variables: tuple[str, ...]
    ideal: tuple[Poly, ...]
    reps: tuple[LocalRep, ...]
    samples: tuple[Mapping[str, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "ideal", tuple(Poly.coerce(g) for g in self.ideal))
        object.__setattr__(self, "reps", tuple(self.reps))
        object.__setattr__(self, "samples", tuple({v: Fraction(c) for v, c in s.items()} for s in self.samples))
        if not self.reps:
            raise BadProblem("at least one local representative is required")

    @property
    def order(self) -> TermOrder:
        return TermOrder("grevlex", self.variables)

    def ideal_basis(self, budget: int = DEFAULT_BUDGET):
        # validate and verify both need it; the problem is immutable, so keep it
        cache = self.__dict__.setdefault("_bases", {})
        if budget not in cache:
            cache[budget] = buchberger(Ideal(self.ideal, self.variables), self.order, budget)
        return cache[budget]

    def validate(self, budget: int = DEFAULT_BUDGET) -> None:
        """Raise BadProblem or IncompatibleReps unless the data describe one regular function."""
        for i, rep in enumerate(self.reps, start=1):
            missing = [v for v in self.variables if v not in rep.point]
            if missing:
                raise BadProblem(f"rep {i}: point does not bind {', '.join(missing)}")
            for g in self.ideal:
                if g.evaluate(rep.point) != 0:
                    raise BadProblem(f"rep {i}: generator {g} does not vanish at the rep point")
            if rep.q.evaluate(rep.point) == 0:
                raise BadProblem(f"rep {i}: denominator {rep.q} vanishes at its own point")
        gb = self.ideal_basis(budget)
        for i in range(len(self.reps)):
            for j in range(i + 1, len(self.reps)):
                a, b = self.reps[i], self.reps[j]
                residue = normal_form(a.p * b.q - b.p * a.q, gb)
                if residue:
                    raise IncompatibleReps(i + 1, j + 1, str(residue))


@dataclass(frozen=True)
class NormForm:
    """Form ``G`` in ``variables`` with ``G == sum(G_i * x_i)``."""

    variables: tuple[str, ...]
    G: Poly
    parts: tuple[Poly, ...]

    @property
    def arity(self) -> int:
        return len(self.variables)

    def decomposition_holds(self) -> bool:
        total = sum((gi * Poly.var(v) for gi, v in zip(self.parts, self.variables)), Poly.zero())
        return total == self.G and self.G.is_homogeneous()


def sum_of_squares_norm_form(r: int) -> NormForm:
    """``G = x_1^2 + ... + x_r^2`` with ``G_i = x_i``; only zero over a real field is the origin."""
    if r < 1:
        raise EmptyForm("a norm form needs at least one variable")
    names = tuple(f"g{i}" for i in range(1, r + 1))
    xs = [Poly.var(n) for n in names]
    form = NormForm(names, sum((x * x for x in xs), Poly.zero()), tuple(xs))
    assert form.decomposition_holds()
    return form


@dataclass(frozen=True)
class ExtensionResult:
    numerator: Poly
    denominator: Poly
    qs: tuple[Poly, ...]
    ps: tuple[Poly, ...]
    form: NormForm = field(repr=False)

    @property
    def F(self) -> RatFun:
        """The extension in lowest terms."""
        return RatFun(self.numerator, self.denominator)

    def formula(self) -> str:
        return f"({self.numerator})/({self.denominator})"


def extend_regular(problem: ExtensionProblem, form: NormForm | None = None,
                   budget: int = DEFAULT_BUDGET) -> ExtensionResult:
    """Assemble ``F = sum G_i(q) p_i / G(q)`` exactly as written (no normalization)."""
    r = len(problem.reps) + len(problem.ideal)
    form = form or sum_of_squares_norm_form(r)
    if form.arity != r:
        raise BadProblem(f"norm form has arity {form.arity}, problem needs {r}")
    problem.validate(budget)
    qs = tuple(rep.q for rep in problem.reps) + problem.ideal
    ps = tuple(rep.p for rep in problem.reps) + problem.ideal
    sub = dict(zip(form.variables, qs))
    num = sum((gi.substitute(sub) * p for gi, p in zip(form.parts, ps)), Poly.zero())
    den = form.G.substitute(sub)
    return ExtensionResult(num, den, qs, ps, form)


@dataclass(frozen=True)
class Verdict:
    passed: bool
    kind: str
    detail: str


@dataclass(frozen=True)
class ExtensionReport:
    restriction: Verdict
    regularity: Verdict
    pointwise: Verdict

    @property
    def passed(self) -> bool:
        return self.restriction.passed and self.regularity.passed and self.pointwise.passed


def verify_extension(problem: ExtensionProblem, result: ExtensionResult,
                     budget: int = DEFAULT_BUDGET) -> ExtensionReport:
    gb = problem.ideal_basis(budget)
    rep = problem.reps[0]

    residue = normal_form(result.numerator * rep.q - result.denominator * rep.p, gb)
    restriction = Verdict(not residue, "restriction",
                          "numerator*q1 - denominator*p1 reduces to 0 modulo I(Z)" if not residue
                          else f"nonzero normal form {residue}")

    q_basis = buchberger(Ideal(result.qs, problem.variables), problem.order, budget)
    if q_basis.is_unit():
        regularity = Verdict(True, "certificate", "1 lies in (q_1, ..., q_r): no common zero anywhere")
    elif problem.samples:
        bad = [s for s in problem.samples if result.denominator.evaluate(s) == 0]
        regularity = Verdict(not bad, "spot-check",
                             f"denominator nonzero at all {len(problem.samples)} sample points" if not bad
                             else f"denominator vanishes at {dict((k, str(v)) for k, v in bad[0].items())}")
    else:
        regularity = Verdict(False, "none", "q_1, ..., q_r generate a proper ideal and no sample points were given")

    failures = []
    for i, lr in enumerate(problem.reps, start=1):
        d = result.denominator.evaluate(lr.point)
        got = result.numerator.evaluate(lr.point) / d if d else UNDEFINED
        want = lr.p.evaluate(lr.point) / lr.q.evaluate(lr.point)
        if got is UNDEFINED or got != want:
            failures.append(f"rep {i}: F = {got}, p/q = {want}")
    pointwise = Verdict(not failures, "pointwise",
                        f"F = p_i/q_i at all {len(problem.reps)} rep points" if not failures else "; ".join(failures))
    return ExtensionReport(restriction, regularity, pointwise)


def tamper(result: ExtensionResult, denominator: Poly) -> ExtensionResult:
    """Copy of ``result`` with a replaced denominator (for negative controls)."""
    return ExtensionResult(result.numerator, Poly.coerce(denominator), result.qs, result.ps, result.form)

