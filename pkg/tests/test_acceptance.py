"""Acceptance criteria, one test each, with one printed PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines are printed even without ``-s``).
Every criterion is timed against the 5 second limit.
"""

from __future__ import annotations

import json
import random
import time

import mpmath
import pytest

from ratcont.cli import main
from ratcont.corealg import (
    Poly,
    RadicalRing,
    RatFun,
    iterated_restrict,
    poly_gcd,
    rad_arith,
    rad_exact_divide,
    substitute,
    variables,
)
from ratcont.errors import DivisionError
from ratcont.extend import ExtensionProblem, LocalRep, extend_regular, tamper, verify_extension
from ratcont.groebner import Ideal, TermOrder, buchberger, normal_form
from ratcont.limits import (
    CONTINUOUS_AT_ORIGIN,
    FINITE,
    INCONCLUSIVE,
    MINUS_INFINITY,
    PLUS_INFINITY,
    UNDEFINED,
    Curve,
    DiscontinuityWitness,
    NotFound,
    PositivityCertificate,
    continuity_at_origin_by_degree,
    curve_limit,
    discontinuity_search,
    float_crosscheck,
    monomial_curves,
    pure_power_certificate,
    verify_positivity_certificate,
)
from ratcont.paperlab import ChartMap, blowup_chart_substitute

TIME_LIMIT = 5.0
CASES = 1000

x, y, z, t = variables("x", "y", "z", "t")
x1, x2, x3, y1, z1 = variables("x1", "x2", "x3", "y1", "z1")


@pytest.fixture
def report(capsys):
    """Time the criterion body and print exactly one verdict line."""

    def run(label, body):
        start = time.perf_counter()
        error = None
        try:
            ok, detail = body()
        except Exception as exc:  # a crash is a failed criterion, reported like any other
            ok, detail, error = False, f"{type(exc).__name__}: {exc}", exc
        elapsed = time.perf_counter() - start
        ok_time = elapsed < TIME_LIMIT
        verdict = "PASS" if ok and ok_time else "FAIL"
        with capsys.disabled():
            print(f"\n[{verdict}] {label} ({elapsed:.2f}s) {detail}")
        if error is not None:
            raise error
        assert ok, detail
        assert ok_time, f"{label} took {elapsed:.2f}s"

    return run


# -- 1 ---------------------------------------------------------------------------

def criterion_1():
    R = RadicalRing("u", 3, 1 + z ** 2)
    u = R.u
    linear = R.element(x) - u * y
    cofactor = R.element(x ** 2) + u * x * y + u ** 2 * y ** 2
    target = R.element(x ** 3 - (1 + z ** 2) * y ** 3)
    product_ok = rad_arith("mul", linear, cofactor) == target
    quotient_ok = rad_exact_divide(target, linear) == cofactor
    return product_ok and quotient_ok, f"product={product_ok} quotient={quotient_ok}"


def test_c1_radical_factorization(report):
    report("C1 radical factorization and cofactor", criterion_1)


# -- 2 ---------------------------------------------------------------------------

def criterion_2():
    f = RatFun(x ** 2, x ** 2 + y ** 2)
    xy = iterated_restrict(f, [("x", 0), ("y", 0)])
    yx = iterated_restrict(f, [("y", 0), ("x", 0)])
    return (xy, yx) == (RatFun(0), RatFun(1)), f"order (x,y) -> {xy}, order (y,x) -> {yx}"


def test_c2_restriction_order(report):
    report("C2 restriction order dependence", criterion_2)


# -- 3 ---------------------------------------------------------------------------

def criterion_3():
    p = (x ** 3 - (1 + t ** 2) * y ** 3) ** 2 + z ** 6 + y ** 7
    chart = ChartMap({"x": x1 * y1, "y": y1, "z": z1 * y1}, "y1")
    e, strict = blowup_chart_substitute(p, chart)
    want = (x1 ** 3 - (1 + t ** 2)) ** 2 + z1 ** 6 + y1
    # second route: substitute by hand and divide
    by_hand = substitute(p, {"x": x1 * y1, "y": y1, "z": z1 * y1}) == y1 ** 6 * want
    return e == 6 and strict == want and by_hand, f"multiplicity={e} strict={strict}"


def test_c3_chart(report):
    report("C3 blow-up chart strict transform", criterion_3)


# -- 4 ---------------------------------------------------------------------------

def criterion_4():
    R = RadicalRing("u", 3, 1 + x3 ** 2)
    u = R.u
    D = R.element(x1 ** 2) + u * x1 * x2 + u ** 2 * x2 ** 2
    cleared = (R.element(x1 ** 3 * x2) * u * D + R.element((x1 ** 3 - (1 + x3 ** 2) * x2 ** 3) * x1 ** 3)
               - R.element(x1 ** 4) * D)
    half = PositivityCertificate(D * 2 - R.element(x1 ** 2 + x2 ** 2), ((1, R.element(x1) + u * x2),),
                                 ((u ** 2 - 1, R.element(x2)),), ("u^2 >= 1",))
    cert_ok = verify_positivity_certificate(half)
    return not cleared and cert_ok, f"cleared residue={cleared} half-bound certificate={cert_ok}"


def test_c4_linear_equation_identity(report):
    report("C4 cleared identity and half bound", criterion_4)


# -- 5 ---------------------------------------------------------------------------

def criterion_5():
    num = z ** 2 * (x ** 2 + y ** 2 * z ** 2 - y ** 3)
    den = x ** 2 + y ** 2 * z ** 2 + y ** 4
    rewriting = num == z ** 2 * den - y * (1 + y) * y ** 2 * z ** 2
    sos = verify_positivity_certificate(PositivityCertificate(den - y ** 2 * z ** 2, ((1, x), (1, y ** 2))))
    f = RatFun(num, den)
    limits = {}
    floats = True
    for z0 in (0, 1, 2):
        for comps in ({"x": t, "y": t}, {"x": t ** 2, "y": t}, {"x": -t, "y": 2 * t ** 2}, {"x": t, "y": 0 * t}):
            gamma = Curve({**comps, "z": 0 * t}, {"z": z0})
            lim = curve_limit(f, gamma)
            limits.setdefault(z0, set()).add(lim.value if lim.is_finite else lim.kind)
            if lim.is_finite:
                floats &= float_crosscheck(f, gamma, lim, 1e-6)[0]
    values_ok = all(limits[z0] == {z0 ** 2} for z0 in (0, 1, 2))
    ok = rewriting and sos and values_ok and floats
    return ok, f"rewriting={rewriting} sos={sos} limits={ {k: sorted(map(str, v)) for k, v in limits.items()} } float={floats}"


def test_c5_surface_function(report):
    report("C5 rewriting, bounded fraction, z0^2 limits", criterion_5)


# -- 6 ---------------------------------------------------------------------------

def criterion_6():
    origin = {"x": 0, "y": 0}
    coeffs = (-3, -2, -1, 1, 2, 3)
    cubic = discontinuity_search(RatFun(x ** 3, x ** 2 + y ** 2), origin, 4, coeffs)
    square = discontinuity_search(RatFun(x ** 2, x ** 2 + y ** 2), origin, 4, coeffs)
    ok_cubic = isinstance(cubic, NotFound) and cubic.limits == ("0",)
    ok_square = isinstance(square, DiscontinuityWitness) and {square.limit_a.value, square.limit_b.value} == {0, 1}
    detail = (f"cubic: {type(cubic).__name__} over {getattr(cubic, 'curves_tried', '?')} curves, "
              f"limits {getattr(cubic, 'limits', None)}; square witness limits "
              f"{sorted(str(w.value) for w in (square.limit_a, square.limit_b)) if ok_square else square}")
    return ok_cubic and ok_square, detail


def test_c6_curve_probing(report):
    report("C6 no witness for x^3/(x^2+y^2), witness for x^2/(x^2+y^2)", criterion_6)


# -- 7 ---------------------------------------------------------------------------

def criterion_7():
    line = ExtensionProblem(("x", "y"), (y,), (LocalRep({"x": 0, "y": 0}, x, 1),))
    grid = tuple({"x": a, "y": b} for a in range(-2, 3) for b in range(-2, 3))
    circle = ExtensionProblem(("x", "y"), (x ** 2 + y ** 2 - 1,), (LocalRep({"x": 1, "y": 0}, x, 2 + y),), grid)
    parts = []
    ok = True
    for name, problem in (("V(y)", line), ("circle", circle)):
        res = extend_regular(problem)
        rep = verify_extension(problem, res)
        tampered = verify_extension(problem, tamper(res, res.denominator + x + 1))
        ok &= rep.passed and not tampered.restriction.passed
        parts.append(f"{name}: a={rep.restriction.passed} b={rep.regularity.passed}[{rep.regularity.kind}] "
                     f"c={rep.pointwise.passed} tampered(a)={tampered.restriction.passed}")
    unit = verify_extension(line, extend_regular(line)).regularity.kind == "certificate"
    ok &= unit
    return ok, "; ".join(parts)


def test_c7_extension(report):
    report("C7 extension lemma verdicts and negative controls", criterion_7)


# -- 8 ---------------------------------------------------------------------------

def criterion_8():
    q4 = x ** 4 + y ** 4
    a = continuity_at_origin_by_degree(x ** 5 + y ** 5, q4, pure_power_certificate(q4))
    q2 = x ** 2 + y ** 2
    b = continuity_at_origin_by_degree(x ** 2, q2, pure_power_certificate(q2))
    ok = a.verdict == CONTINUOUS_AT_ORIGIN and a.value == 0 and b.verdict == INCONCLUSIVE
    return ok, f"(x^5+y^5)/(x^4+y^4): {a.verdict}; x^2/(x^2+y^2): {b.verdict}"


def test_c8_degree_criterion(report):
    report("C8 degree criterion", criterion_8)


# -- 9: property suites ------------------------------------------------------------

def rand_poly(rng, gens=("x", "y", "z"), max_deg=3, terms=4, lo=-5, hi=5):
    d = {}
    for _ in range(rng.randint(0, terms)):
        d[tuple(rng.randint(0, max_deg) for _ in gens)] = rng.randint(lo, hi)
    return Poly(d, gens)


def rand_nonzero(rng, **kw):
    while True:
        p = rand_poly(rng, **kw)
        if p:
            return p


def prop_ring_axioms(rng):
    a, b, c = (rand_poly(rng) for _ in range(3))
    return ((a + b) + c == a + (b + c) and (a * b) * c == a * (b * c) and a * b == b * a
            and a * (b + c) == a * b + a * c and a - a == 0)


def prop_gcd_divisibility(rng):
    kw = dict(max_deg=2, terms=3)
    a, b, c = rand_poly(rng, **kw), rand_poly(rng, **kw), rand_nonzero(rng, **kw)
    ac, bc = a * c, b * c
    g = poly_gcd(ac, bc)
    try:
        ac.exact_div(g) if ac else None
        bc.exact_div(g) if bc else None
        g.exact_div(c.primitive())
    except DivisionError:
        return False
    return True


def prop_nf_idempotent(rng):
    gens = [rand_nonzero(rng, max_deg=2, terms=3) for _ in range(rng.randint(1, 2))]
    order = TermOrder(rng.choice(["lex", "grevlex"]), ("x", "y", "z"))
    gb = buchberger(Ideal(tuple(gens)), order)
    p = rand_poly(rng)
    once = normal_form(p, gb)
    return normal_form(once, gb) == once and normal_form(once - p, gb) == 0


def _mp_value(f, gamma, tt):
    with mpmath.workdps(200):
        pt = {v: mpmath.mpf(gamma.base[v].numerator) / gamma.base[v].denominator
              + sum((mpmath.mpf(c.numerator) / c.denominator * tt ** m.get("t", 0) for m, c in comp.items()),
                    mpmath.mpf(0))
              for v, comp in gamma.components.items()}

        def ev(p):
            s = mpmath.mpf(0)
            for m, c in p.items():
                term = mpmath.mpf(c.numerator) / c.denominator
                for v, k in m.items():
                    term *= pt[v] ** k
                s += term
            return s

        return ev(f.num) / ev(f.den)


def prop_limit_vs_oracle(rng):
    f = RatFun(rand_poly(rng, ("x", "y"), 3, 3), rand_nonzero(rng, gens=("x", "y"), max_deg=3, terms=3))
    comps = {}
    for v in ("x", "y"):
        c = rand_poly(rng, ("t",), 3, 2)
        comps[v] = c - c.constant_term()
    if not any(comps.values()):
        comps["x"] = t
    gamma = Curve(comps, {"x": rng.randint(-2, 2), "y": rng.randint(-2, 2)})
    lim = curve_limit(f, gamma)
    if lim.kind == UNDEFINED:
        return True
    with mpmath.workdps(200):
        val = _mp_value(f, gamma, mpmath.mpf("1e-12"))
        if lim.kind == FINITE:
            target = mpmath.mpf(lim.value.numerator) / lim.value.denominator
            return abs(val - target) <= mpmath.mpf("1e-6") * max(1, abs(target))
        if lim.kind == PLUS_INFINITY:
            return val > 1e6
        if lim.kind == MINUS_INFINITY:
            return val < -1e6
    return False


def prop_extension_identity(rng):
    a, b = rng.randint(-3, 3), rng.randint(-3, 3)
    point = {"x": a, "y": b}
    dx, dy = x - a, y - b
    gen = rng.randint(-3, 3) * dx + rng.randint(-3, 3) * dy + rng.randint(-2, 2) * dx * dy + rng.randint(-2, 2) * dx ** 2
    if not gen:
        gen = dy
    p = rand_poly(rng, ("x", "y"), 2, 3)
    q = rand_poly(rng, ("x", "y"), 2, 3)
    q = q - q.evaluate(point) + rng.choice([-2, -1, 1, 3])
    reps = [LocalRep(point, p, q)]
    if rng.random() < 0.5:
        h = rand_poly(rng, ("x", "y"), 1, 2)
        h = h - h.evaluate(point) + 1
        reps.append(LocalRep(point, p * h + gen * rand_poly(rng, ("x", "y"), 1, 2),
                             q * h + gen * rand_poly(rng, ("x", "y"), 1, 2)))
    problem = ExtensionProblem(("x", "y"), (gen,), tuple(reps))
    return verify_extension(problem, extend_regular(problem)).restriction.passed


PROPERTIES = [
    ("ring axioms", prop_ring_axioms),
    ("gcd divisibility", prop_gcd_divisibility),
    ("normal-form idempotence", prop_nf_idempotent),
    ("limit vs float oracle", prop_limit_vs_oracle),
    ("extension identity (a)", prop_extension_identity),
]


def property_suite(prop, seed):
    def body():
        rng = random.Random(seed)
        failures = [i for i in range(CASES) if not prop(rng)]
        return not failures, f"{CASES - len(failures)}/{CASES} cases" + (f", first failure #{failures[0]}" if failures else "")
    return body


@pytest.mark.parametrize("name,prop", PROPERTIES, ids=[n for n, _ in PROPERTIES])
def test_c9_property_suites(report, name, prop):
    report(f"C9 {name}", property_suite(prop, seed=sum(map(ord, name))))


# -- 10 --------------------------------------------------------------------------

def criterion_10():
    def once(sid):
        out = []
        code = main(["verify-example", sid, "--json"], out.append)
        return code, "\n".join(out).encode("utf-8")

    mismatched = []
    for sid in ("EX1", "EX2", "EX3", "EX4", "EX5"):
        first, second = once(sid), once(sid)
        if first != second or first[0] != 0 or not json.loads(first[1])["pass"]:
            mismatched.append(sid)
    return not mismatched, "byte-identical for EX1..EX5" if not mismatched else f"differs: {mismatched}"


def test_c10_determinism(report):
    report("C10 verify-example JSON determinism", criterion_10)


def test_enumeration_budget_matches_criterion_6():
    # E=4 with six coefficients per coordinate: (1 + 4*6)^2 - 1 monomial curves
    assert len(monomial_curves({"x": 0, "y": 0}, 4, (-3, -2, -1, 1, 2, 3))) == 624
