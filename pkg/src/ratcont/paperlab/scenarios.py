"""Machine-checked worked examples.

Each scenario is a list of exact checks built from the library modules.
``run_scenario(id, tamper=True)`` runs the same checks on deliberately
mutated input; at least one check of every mutated twin must fail, which
guards against checks that pass vacuously.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ratcont.corealg.poly import variables
from ratcont.corealg.radical import RadicalRing, rad_exact_divide
from ratcont.corealg.ratfun import RatFun, iterated_restrict
from ratcont.errors import RatcontError
from ratcont.groebner import Ideal, TermOrder, buchberger, normal_form
from ratcont.limits.certificates import (
    CONTINUOUS_AT_ORIGIN,
    PositivityCertificate,
    certificate_residue,
    continuity_at_origin_by_degree,
    pure_power_certificate,
    side_assumptions,
    verify_positivity_certificate,
)
from ratcont.limits.curves import (
    Curve,
    DiscontinuityWitness,
    NotFound,
    curve_limit,
    discontinuity_search,
    float_crosscheck,
)
from ratcont.paperlab.charts import ChartMap, blowup_chart_substitute

PASS, FAIL = "pass", "fail"


@dataclass(frozen=True)
class CheckResult:
    name: str
    anchor: str
    expected: str
    verdict: str
    witness: object

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict:
        return {"name": self.name, "anchor": self.anchor, "expected": self.expected,
                "verdict": self.verdict, "witness": self.witness}


@dataclass(frozen=True)
class Report:
    scenario: str
    description: str
    checks: tuple[CheckResult, ...]
    tampered: bool = False

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed_checks(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"scenario": self.scenario, "description": self.description, "tampered": self.tampered,
                "checks": [c.to_dict() for c in self.checks], "pass": self.passed}


@dataclass(frozen=True)
class _Check:
    name: str
    anchor: str
    expected: str
    run: Callable[[], tuple[bool, object]]

    def evaluate(self) -> CheckResult:
        try:
            ok, witness = self.run()
        except RatcontError as exc:
            ok, witness = False, f"{type(exc).__name__}: {exc}"
        return CheckResult(self.name, self.anchor, self.expected, PASS if ok else FAIL, witness)


def _s(x) -> str:
    return str(x)


# -- EX1: cube-root surface --------------------------------------------------

def _ex1(tamper: bool) -> list[_Check]:
    x, y, z = variables("x", "y", "z")
    ring = RadicalRing("u", 3, 1 + z ** 2)
    u = ring.u
    surface = ring.element(x ** 3 - (1 + z ** 2) * y ** 3)
    linear = ring.element(x) + u * y if tamper else ring.element(x) - u * y
    cofactor = ring.element(x ** 2) + u * x * y + u ** 2 * y ** 2
    anchor = "cube-root surface x^3 = (1+z^2) y^3 with f = x/y"

    def factorization():
        prod = linear * cofactor
        return prod == surface, {"linear": _s(linear), "cofactor": _s(cofactor), "residue": _s(surface - prod)}

    def cofactor_division():
        got = rad_exact_divide(surface, linear)
        return got == cofactor, {"quotient": _s(got)}

    def restriction_to_surface():
        # the linear factor reads x + a*y = 0, so x = -a*y on the smooth branch
        a = rad_exact_divide(linear - ring.element(x), ring.element(y))
        on_branch = {"x": -a * y}
        residue = ring.element(x).substitute(on_branch) - u * ring.element(y).substitute(on_branch)
        return not residue, {"x_on_branch": _s(-a * y), "x - u*y": _s(residue)}

    def order_dependence():
        f = RatFun(x ** 2, x ** 2 + y ** 2)
        xy = iterated_restrict(f, [("x", 0), ("y", 0)])
        yx = iterated_restrict(f, [("y", 0), ("x", 0)])
        return xy == 0 and yx == 1, {"order x,y": _s(xy), "order y,x": _s(yx)}

    def axis_procedure():
        F = RatFun((x ** 2 + y ** 2) * z + y ** 3, x ** 2 + y ** 2)
        on_plane = iterated_restrict(F, [("x", 0)])
        on_axis = iterated_restrict(on_plane, [("y", 0)])
        return on_axis == RatFun(z), {"x=0": _s(on_plane), "z-axis": _s(on_axis)}

    return [
        _Check("radical factorization", anchor, "identity holds in Q[x,y,z][u]/(u^3-(1+z^2))", factorization),
        _Check("cofactor by exact division", anchor, "quotient x^2+uxy+u^2y^2", cofactor_division),
        _Check("x/y restricts to u on the smooth branch", anchor, "x - u*y vanishes on the branch", restriction_to_surface),
        _Check("restriction order dependence", "coordinate-by-coordinate restriction of x^2/(x^2+y^2)",
               "0 for order (x,y), 1 for order (y,x)", order_dependence),
        _Check("z-axis restriction procedure", "restriction to x=0 then y=0 after cancelling",
               "rational function z", axis_procedure),
    ]


# -- EX2: blow-up of the t-axis ----------------------------------------------

def _ex2(tamper: bool) -> list[_Check]:
    x, y, z, t = variables("x", "y", "z", "t")
    x1, y1, z1 = variables("x1", "y1", "z1")
    tail = y ** 5 if tamper else y ** 7
    X = (x ** 3 - (1 + t ** 2) * y ** 3) ** 2 + z ** 6 + tail
    chart = ChartMap({"x": x1 * y1, "y": y1, "z": z1 * y1}, "y1")
    expected_strict = (x1 ** 3 - (1 + t ** 2)) ** 2 + z1 ** 6 + y1
    anchor = "hypersurface (x^3-(1+t^2)y^3)^2 + z^6 + y^7 = 0 blown up along the t-axis"

    def chart_identity():
        e, strict = blowup_chart_substitute(X, chart)
        return e == 6 and strict == expected_strict, {"multiplicity": e, "strict": _s(strict)}

    def pullback_of_f():
        g = RatFun(chart.pull_back(x), chart.pull_back(y))
        return g == RatFun(x1), {"f o pi": _s(g)}

    def singular_t_axis():
        axis = {"x": 0, "y": 0, "z": 0}
        values = {v: _s(X.diff(v).substitute(axis)) for v in ("t", "x", "y", "z")}
        values["X"] = _s(X.substitute(axis))
        return all(v == "0" for v in values.values()), values

    def unique_preimage():
        _, strict = blowup_chart_substitute(X, chart)
        ring = RadicalRing("u", 3, 1 + t ** 2)
        at = ring.element(strict).substitute({"x1": ring.u, "y1": 0, "z1": 0})
        return not at, {"strict at (u,0,0,t)": _s(at)}

    def several_z():
        w1, w2, z2 = variables("w1", "w2", "z2")
        Xm = (x ** 3 - (1 + t ** 2) * y ** 3) ** 2 + z1 ** 6 + z2 ** 6 + tail
        chart_m = ChartMap({"x": x1 * y1, "y": y1, "z1": w1 * y1, "z2": w2 * y1}, "y1")
        e, strict = blowup_chart_substitute(Xm, chart_m)
        want = (x1 ** 3 - (1 + t ** 2)) ** 2 + w1 ** 6 + w2 ** 6 + y1
        return e == 6 and strict == want, {"multiplicity": e, "strict": _s(strict)}

    return [
        _Check("chart multiplicity and strict transform", anchor, "(6, (x1^3-(1+t^2))^2 + z1^6 + y1)", chart_identity),
        _Check("pull-back of x/y is x1", anchor, "x1", pullback_of_f),
        _Check("t-axis is singular", anchor, "all partial derivatives vanish on x=y=z=0", singular_t_axis),
        _Check("preimage of the t-axis", anchor, "strict transform vanishes at (cbrt(1+t^2),0,0,t)", unique_preimage),
        _Check("two z-variables", "same chart with z1^6 + z2^6", "(6, ... + w1^6 + w2^6 + y1)", several_z),
    ]


# -- EX3: a linear equation without continuous rational solution --------------

def _ex3(tamper: bool) -> list[_Check]:
    x1, x2, x3 = variables("x1", "x2", "x3")
    ring = RadicalRing("u", 3, 1 + x3 ** 2)
    u = ring.u
    a1 = x1 ** 3 * x2
    a2 = x1 ** 3 - ((2 if tamper else 1) + x3 ** 2) * x2 ** 3
    g = x1 ** 4
    D = ring.element(x1 ** 2) + u * x1 * x2 + u ** 2 * x2 ** 2
    anchor = "equation x1^3 x2 y1 + (x1^3-(1+x3^2)x2^3) y2 = x1^4"

    def semialgebraic_solution():
        residue = u * a1 * D + ring.element(a2 * x1 ** 3) - D * g
        return not residue, {"cleared residue": _s(residue), "D": _s(D)}

    def half_bound():
        target = D - ring.element(x1 ** 2 + x2 ** 2) * Fraction(1, 2)
        cert = PositivityCertificate(target, ((Fraction(1, 2), ring.element(x1) + u * x2),),
                                     (((u ** 2 - 1) * Fraction(1, 2), ring.element(x2)),),
                                     ("u = cbrt(1+x3^2) >= 1",))
        ok = verify_positivity_certificate(cert)
        return ok, {"residue": _s(certificate_residue(cert)), "assumed": side_assumptions(cert)}

    def y2_bound():
        cert = PositivityCertificate(D * 2 - x1 ** 2, ((1, ring.element(x1) + u * x2), (1, u * x2)))
        ok = verify_positivity_certificate(cert)
        return ok, {"2D - x1^2": _s(cert.target), "residue": _s(certificate_residue(cert))}

    def rational_solution():
        lhs = RatFun(a1) * RatFun(x1, x2) + RatFun(a2) * 0
        return lhs == RatFun(g), {"lhs": _s(lhs)}

    def y1_on_surface():
        branch = {"x1": u * x2}
        coeff = ring.element(a2).substitute(branch)
        residue = ring.element(g).substitute(branch) - u * ring.element(a1).substitute(branch)
        return not coeff and not residue, {"y2 coefficient on S": _s(coeff), "x1^4 - u*x1^3*x2 on S": _s(residue)}

    return [
        _Check("semialgebraic solution, denominators cleared", anchor, "residue 0", semialgebraic_solution),
        _Check("D >= (x1^2+x2^2)/2", "lower bound for the denominator of y2",
               "certificate verifies with side term (u^2-1)/2 * x2^2", half_bound),
        _Check("|y2| <= 2|x1|", "lower bound D >= x1^2/2", "2D - x1^2 is a sum of squares", y2_bound),
        _Check("rational solution y1 = x1/x2, y2 = 0", anchor, "identity", rational_solution),
        _Check("y1 restricted to S is u", "surface x1 = cbrt(1+x3^2) x2", "y2 coefficient vanishes, y1 = u", y1_on_surface),
    ]


# -- EX4: a function vanishing on a dense part of a surface -------------------

EX4_Z0 = (0, 1, 2)


def _ex4_curves(z0: int) -> list[Curve]:
    (t,) = variables("t")
    shapes = [(t, 0), (0, t), (t, t), (t ** 2, t), (t, t ** 2), (t ** 3, -t), (2 * t, 3 * t ** 2)]
    curves = []
    for xs, ys in shapes:
        for zs in (0, t):
            curves.append(Curve({"x": xs, "y": ys, "z": zs}, {"x": 0, "y": 0, "z": z0}))
    return curves


def _ex4(tamper: bool) -> list[_Check]:
    x, y, z = variables("x", "y", "z")
    S = x ** 2 + y ** 2 * z ** 2 - y ** 3
    num = z ** 2 * (x ** 2 + y ** 2 * z ** 2 + (y ** 3 if tamper else -y ** 3))
    den = x ** 2 + y ** 2 * z ** 2 + y ** 4
    f = RatFun(num, den)
    anchor = "f = z^2 (x^2+y^2z^2-y^3)/(x^2+y^2z^2+y^4) on the surface x^2+y^2z^2 = y^3"

    def rewriting():
        rewritten = RatFun(z ** 2) - RatFun(y * (1 + y) * y ** 2 * z ** 2, den)
        residue = num - z ** 2 * den + y * (1 + y) * y ** 2 * z ** 2
        return f == rewritten and not residue, {"numerator residue": _s(residue)}

    def bounded_fraction():
        cert = PositivityCertificate(den - y ** 2 * z ** 2, ((1, x), (1, y ** 2)))
        return verify_positivity_certificate(cert), {"den - num": _s(cert.target),
                                                     "residue": _s(certificate_residue(cert))}

    def axis_limits():
        witness, ok = {}, True
        for z0 in EX4_Z0:
            seen = []
            for curve in _ex4_curves(z0):
                lim = curve_limit(f, curve)
                good = lim.is_finite and lim.value == z0 ** 2
                if good:
                    good, _ = float_crosscheck(f, curve, lim)
                ok = ok and good
                seen.append(lim.label())
            witness[f"z0={z0}"] = sorted(set(seen))
        return ok, witness

    def vanishes_on_surface():
        gb = buchberger(Ideal((S,), ("x", "y", "z")), TermOrder("grevlex", ("x", "y", "z")))
        nf = normal_form(num, gb)
        return not nf, {"normal form of numerator": _s(nf)}

    return [
        _Check("rewriting identity", anchor, "f = z^2 - y(1+y) y^2z^2/(x^2+y^2z^2+y^4)", rewriting),
        _Check("fraction bounded by 1", anchor, "den - y^2z^2 = x^2 + (y^2)^2", bounded_fraction),
        _Check("limits along the z-axis", anchor, "z0^2 along every probe curve, z0 in {0,1,2}", axis_limits),
        _Check("numerator in the surface ideal", anchor, "normal form 0", vanishes_on_surface),
    ]


# -- EX5: x^3/(x^2+y^2) at the origin ----------------------------------------

EX5_BUDGET = 4
EX5_COEFFS = (-3, -2, -1, 1, 2, 3)


def _ex5(tamper: bool) -> list[_Check]:
    x, y = variables("x", "y")
    p = x ** 2 if tamper else x ** 3
    q = x ** 2 + y ** 2
    f = RatFun(p, q)
    anchor = "f = x^3/(x^2+y^2) with f(0,0) = 0"
    origin = {"x": 0, "y": 0}

    def search():
        res = discontinuity_search(f, origin, EX5_BUDGET, EX5_COEFFS)
        if isinstance(res, NotFound):
            return True, {"result": "NotFound", "curves": res.curves_tried, "undefined": res.undefined_curves,
                          "label": "budget-limited evidence"}
        return False, {"result": "witness", "limits": [res.limit_a.label(), res.limit_b.label()],
                       "curves": [_s(res.curve_a), _s(res.curve_b)]}

    def limits_zero():
        res = discontinuity_search(f, origin, EX5_BUDGET, EX5_COEFFS)
        labels = list(res.limits) if isinstance(res, NotFound) else [res.limit_a.label(), res.limit_b.label()]
        return labels == ["0"], {"limits": labels}

    def degree_criterion():
        c = continuity_at_origin_by_degree(p, q, pure_power_certificate(q))
        return c.verdict == CONTINUOUS_AT_ORIGIN and c.value == 0, {"verdict": c.verdict, "reason": c.reason,
                                                                     "value": _s(c.value)}

    def two_sided_bound():
        # |p| <= |x| q  <=>  x^2 q^2 - p^2 >= 0
        cert = PositivityCertificate(x ** 2 * q ** 2 - p ** 2, ((2, x ** 2 * y), (1, x * y ** 2)))
        return verify_positivity_certificate(cert), {"target": _s(cert.target),
                                                     "residue": _s(certificate_residue(cert))}

    def contrast():
        res = discontinuity_search(RatFun(x ** 2, q), origin, EX5_BUDGET, EX5_COEFFS)
        if not isinstance(res, DiscontinuityWitness):
            return False, {"result": "NotFound"}
        labels = sorted([res.limit_a.label(), res.limit_b.label()])
        return labels == ["0", "1"], {"limits": labels, "curves": [_s(res.curve_a), _s(res.curve_b)]}

    return [
        _Check("no discontinuity witness within budget", anchor,
               "NotFound for exponents <= 4, coefficients +-1,+-2,+-3", search),
        _Check("every probed limit is 0", anchor, "all limits 0", limits_zero),
        _Check("degree criterion", anchor, "ContinuousAtOrigin with value 0", degree_criterion),
        _Check("|x^3| <= |x|(x^2+y^2)", anchor, "x^2(x^2+y^2)^2 - x^6 = 2(x^2y)^2 + (xy^2)^2", two_sided_bound),
        _Check("contrast x^2/(x^2+y^2)", "f = x^2/(x^2+y^2) at the origin", "witness with limits {0, 1}", contrast),
    ]


_SCENARIOS = {
    "EX1": ("cube-root surface: radical factorization, restriction of x/y, order-dependent restriction", _ex1),
    "EX2": ("blow-up chart of a normal hypersurface with singular t-axis", _ex2),
    "EX3": ("linear equation with a continuous semialgebraic but no continuous rational solution", _ex3),
    "EX4": ("continuous function vanishing on the smooth locus closure of a surface", _ex4),
    "EX5": ("x^3/(x^2+y^2) is continuous at the origin; x^2/(x^2+y^2) is not", _ex5),
}

_ANCHORS = {
    "EX1": "factor x^3-(1+z^2)y^3 over the cube root of 1+z^2",
    "EX2": "chart x1 = x/y, y1 = y, z1 = z/y",
    "EX3": "y1 restricted to x1 = cbrt(1+x3^2) x2 is not rational",
    "EX4": "z^2 - y(1+y) y^2z^2/(x^2+y^2z^2+y^4)",
    "EX5": "every curve limit of x^3/(x^2+y^2) at the origin is 0",
}


def list_scenarios() -> list[dict]:
    return [{"id": sid, "description": desc, "anchor": _ANCHORS[sid]} for sid, (desc, _) in _SCENARIOS.items()]


def run_scenario(scenario_id: str, tamper: bool = False) -> Report:
    key = scenario_id.upper()
    if key not in _SCENARIOS:
        raise KeyError(f"unknown scenario {scenario_id!r}; expected one of {', '.join(_SCENARIOS)}")
    desc, build = _SCENARIOS[key]
    return Report(key, desc, tuple(c.evaluate() for c in build(tamper)), tamper)
