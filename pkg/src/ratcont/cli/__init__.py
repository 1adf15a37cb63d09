"""Command line front end: ``ratcont <verb> [flags]``.

Exit status 0 means verified or computed, 1 means mathematically refuted
or failed, 2 means malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from ratcont import __version__
from ratcont.cli.expr import (
    parse_curve,
    parse_expression,
    parse_generators,
    parse_poly,
    parse_radical,
    parse_ratfun,
    parse_assignments,
    split_top_level,
    to_pair,
    to_radpoly,
)
from ratcont.cli.problems import parse_problem
from ratcont.corealg.poly import sort_vars
from ratcont.corealg.ratfun import UNDEFINED as RAT_UNDEFINED
from ratcont.corealg.ratfun import iterated_restrict
from ratcont.errors import (
    BadProblem,
    BudgetExceeded,
    DenominatorVanishesOnVariety,
    IncompatibleReps,
    IncompletePoint,
    NotHomogeneous,
    ParseError,
    PrecisionLoss,
    RatcontError,
    RestrictionUndefined,
)
from ratcont.extend import extend_regular, verify_extension
from ratcont.groebner import DEFAULT_BUDGET, Ideal, TermOrder, buchberger, ideal_member, normal_form, restrict_to_variety
from ratcont.limits import (
    REAL_ONE_SIDED,
    REAL_TWO_SIDED,
    UNDEFINED,
    Curve,
    PAdic,
    PositivityCertificate,
    certificate_report,
    continuity_at_origin_by_degree,
    curve_limit,
    float_crosscheck,
    padic_evaluate,
    pure_power_certificate,
)
from ratcont.limits.curves import SEMANTICS
from ratcont.paperlab import Report, list_scenarios, run_scenario

SCHEMA = "ratcont/1"
OK, REFUTED, USAGE = 0, 1, 2


@dataclass
class Outcome:
    status: int
    payload: dict
    lines: list[str] = field(default_factory=list)


class UsageError(Exception):
    pass


def emit_report(report: Report | dict | None = None) -> str:
    """Canonical JSON: sorted keys, versioned schema, byte-stable across runs."""
    if report is None:
        data = {"checks": [], "pass": True}
    elif isinstance(report, Report):
        data = report.to_dict()
    else:
        data = dict(report)
    data["schema"] = SCHEMA
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2)


# -- argument helpers --------------------------------------------------------

def _read_arg(value: str) -> str:
    """``@path`` reads a file, anything else is literal."""
    if value.startswith("@"):
        try:
            return Path(value[1:]).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {value[1:]}: {exc.strerror}") from None
    return value


def _order(args, gens) -> TermOrder:
    if args.vars:
        names = tuple(split_top_level(args.vars))
    else:
        names = sort_vars(v for g in gens for v in g.gens)
    return TermOrder(args.order, names)


def _basis(args, extra=()):
    gens = parse_generators(_read_arg(args.ideal))
    order = _order(args, list(gens) + list(extra))
    return buchberger(Ideal(tuple(gens), order.variables), order, args.budget)


# -- verbs -------------------------------------------------------------------

def cmd_limit(args) -> Outcome:
    f = parse_ratfun(args.f)
    comps, base = parse_curve(args.curve)
    semantics = REAL_TWO_SIDED if args.side == "both" else args.semantics
    curve = Curve(comps, base, semantics)
    lim = curve_limit(f, curve, "plus" if args.side == "both" else args.side)
    payload = {"command": "limit", "f": str(f), "curve": str(curve), "semantics": semantics,
               "kind": lim.kind, "value": lim.label(), "num_order": lim.num_order, "den_order": lim.den_order}
    lines = [f"{lim.kind} {lim.label()}"]
    if lim.minus is not None:
        payload["minus"] = {"kind": lim.minus.kind, "value": lim.minus.label()}
        lines.append(f"t->0-: {lim.minus.kind} {lim.minus.label()}")
    if lim.kind == UNDEFINED:
        return Outcome(REFUTED, payload, lines + ["f is identically undefined along the curve"])
    if lim.is_finite and args.side != "minus":
        ok, est = float_crosscheck(f, curve, lim)
        payload["float_check"] = {"agrees": ok, "estimate": repr(est)}
        lines.append(f"float cross-check: {'agrees' if ok else 'DISAGREES'} (estimate {est!r})")
    return Outcome(OK, payload, lines)


def cmd_restrict(args) -> Outcome:
    f = parse_ratfun(args.f)
    if bool(args.ideal) == bool(args.point):
        raise UsageError("restrict needs exactly one of --ideal or --point")
    gb = _basis(args, [f.num, f.den]) if args.ideal else None
    steps = list(parse_assignments(args.point).items()) if args.point else []
    if gb is not None and gb.is_unit():
        msg = "the ideal is the unit ideal: the variety is empty"
        return Outcome(REFUTED, {"command": "restrict", "f": str(f), "error": msg}, [msg])
    try:
        if gb is not None:
            r = restrict_to_variety(f, gb)
            how = {"ideal": [str(g) for g in gb.basis]}
        else:
            r = iterated_restrict(f, steps)
            how = {"steps": [f"{v}={c}" for v, c in steps]}
    except (DenominatorVanishesOnVariety, RestrictionUndefined) as exc:
        return Outcome(REFUTED, {"command": "restrict", "f": str(f), "error": str(exc)}, [str(exc)])
    return Outcome(OK, {"command": "restrict", "f": str(f), "restriction": str(r), **how}, [str(r)])


def cmd_gb(args) -> Outcome:
    gb = _basis(args)
    basis = [str(g) for g in gb.basis]
    payload = {"command": "gb", "order": gb.order.kind, "variables": list(gb.order.variables),
               "basis": basis, "spairs": gb.spairs}
    return Outcome(OK, payload, basis or ["0"])


def cmd_nf(args) -> Outcome:
    p = parse_poly(args.expr)
    gb = _basis(args, [p])
    nf = normal_form(p, gb)
    return Outcome(OK, {"command": "nf", "expr": str(p), "normal_form": str(nf)}, [str(nf)])


def cmd_member(args) -> Outcome:
    p = parse_poly(args.expr)
    gb = _basis(args, [p])
    member = ideal_member(p, gb)
    payload = {"command": "member", "expr": str(p), "member": member, "normal_form": str(normal_form(p, gb))}
    return Outcome(OK if member else REFUTED, payload, ["true" if member else "false"])


def cmd_extend(args) -> Outcome:
    problem = parse_problem(_read_arg("@" + args.problem))
    try:
        result = extend_regular(problem, budget=args.budget)
    except IncompatibleReps as exc:
        return Outcome(REFUTED, {"command": "extend", "error": str(exc)}, [str(exc)])
    report = verify_extension(problem, result, args.budget)
    verdicts = {name: {"pass": v.passed, "kind": v.kind, "detail": v.detail}
                for name, v in (("restriction", report.restriction), ("regularity", report.regularity),
                                ("pointwise", report.pointwise))}
    payload = {"command": "extend", "numerator": str(result.numerator), "denominator": str(result.denominator),
               "lowest_terms": str(result.F), "verdicts": verdicts, "pass": report.passed}
    lines = [f"F = {result.formula()}", f"  = {result.F}"]
    lines += [f"({tag}) {name}: {'pass' if v['pass'] else 'FAIL'} [{v['kind']}] {v['detail']}"
              for tag, (name, v) in zip("abc", verdicts.items())]
    return Outcome(OK if report.passed else REFUTED, payload, lines)


def _terms(text: str, ring):
    out = []
    for part in split_top_level(text, ";"):
        coeff, sep, base = part.partition(":")
        if not sep:
            raise ParseError(f"expected 'coefficient : polynomial', found {part!r}", 1, 1)
        c, s = parse_expression(coeff), parse_expression(base)
        out.append((to_radpoly(c, ring), to_radpoly(s, ring)) if ring else (parse_poly(coeff), parse_poly(base)))
    return out


def cmd_certify(args) -> Outcome:
    if args.f:
        if args.expr or args.squares or args.side_terms:
            raise UsageError("--f (degree criterion) cannot be combined with --expr/--squares/--side-terms")
        p, q = to_pair(parse_expression(args.f))
        try:
            cert = pure_power_certificate(q)
        except ValueError:
            cert = PositivityCertificate(q)
        try:
            c = continuity_at_origin_by_degree(p, q, cert)
        except NotHomogeneous as exc:
            raise UsageError(str(exc)) from None
        payload = {"command": "certify", "numerator": str(p), "denominator": str(q), "verdict": c.verdict,
                   "value": None if c.value is None else str(c.value), "reason": c.reason}
        return Outcome(OK if c.continuous else REFUTED, payload, [c.verdict, c.reason])
    if not args.expr or not args.squares:
        raise UsageError("certify needs --f, or --expr with --squares")
    ring = parse_radical(args.radical) if args.radical else None
    target = to_radpoly(parse_expression(args.expr), ring) if ring else parse_poly(args.expr)
    squares = []
    for c, s in _terms(args.squares, ring):
        c = c.to_poly() if ring else c
        if not c.is_constant():
            raise UsageError(f"square coefficient {c} must be a rational constant")
        squares.append((c.constant_value(), s))
    side = _terms(args.side_terms, ring) if args.side_terms else []
    cert = PositivityCertificate(target, tuple(squares), tuple(side))
    rep = certificate_report(cert)
    lines = ["valid" if rep["valid"] else "INVALID", f"residue: {rep['residue']}"]
    lines += [f"assuming {a}" for a in rep["assumed"]]
    return Outcome(OK if rep["valid"] else REFUTED, {"command": "certify", **rep}, lines)


def cmd_verify_example(args) -> Outcome:
    if args.list:
        entries = list_scenarios()
        return Outcome(OK, {"command": "verify-example", "scenarios": entries},
                       [f"{e['id']}  {e['description']}" for e in entries])
    if not args.scenario:
        raise UsageError("verify-example needs a scenario id (EX1..EX5) or --list")
    try:
        report = run_scenario(args.scenario, tamper=args.tamper)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    lines = [f"{report.scenario}: {report.description}"]
    lines += [f"  [{c.verdict.upper()}] {c.name}" for c in report.checks]
    lines.append("PASS" if report.passed else "FAIL")
    return Outcome(OK if report.passed else REFUTED, report.to_dict(), lines)


def cmd_padic_eval(args) -> Outcome:
    if not args.padic or not args.point:
        raise UsageError("padic-eval needs --padic p:prec and --point")
    try:
        p_text, prec_text = args.padic.split(":")
        p, prec = int(p_text), int(prec_text)
    except ValueError:
        raise UsageError("--padic expects p:prec, e.g. 3:10") from None
    f = parse_ratfun(args.f)
    try:
        point = {v: PAdic.from_rational(p, c, prec) for v, c in parse_assignments(args.point).items()}
        value = padic_evaluate(f, point, args.min_digits)
    except PrecisionLoss as exc:
        return Outcome(REFUTED, {"command": "padic-eval", "f": str(f), "error": str(exc)}, [str(exc)])
    if value is RAT_UNDEFINED:
        return Outcome(REFUTED, {"command": "padic-eval", "f": str(f), "value": "Undefined"},
                       ["Undefined: the denominator is indistinguishable from 0"])
    payload = {"command": "padic-eval", "f": str(f), "p": p, "valuation": value.valuation, "unit": value.unit,
               "digits": value.digits, "is_zero": value.is_zero, "value": str(value)}
    return Outcome(OK, payload, [str(value)])


# -- parser ------------------------------------------------------------------

def _common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--json", action="store_true", help="emit a canonical JSON report")


def _ideal_flags(sp: argparse.ArgumentParser, required: bool = True) -> None:
    sp.add_argument("--ideal", required=required, help="comma-separated generators, or @file with one per line")
    sp.add_argument("--vars", help="variable order, largest first (default: natural order)")
    sp.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="S-pair budget")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ratcont", description="Exact tools for continuous rational functions.")
    parser.add_argument("--version", action="version", version=f"ratcont {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    sp = sub.add_parser("limit", help="limit of a rational function along a polynomial curve")
    sp.add_argument("--f", required=True, help="rational function, e.g. 'x^2/(x^2+y^2)'")
    sp.add_argument("--curve", required=True, help="e.g. 'x=t, y=t^2 @ (0,0)'")
    sp.add_argument("--side", choices=("plus", "minus", "both"), default="plus",
                    help="t -> 0+, t -> 0-, or both (two-sided semantics)")
    sp.add_argument("--semantics", choices=SEMANTICS, default=REAL_ONE_SIDED)
    _common(sp)
    sp.set_defaults(run=cmd_limit)

    sp = sub.add_parser("restrict", help="restrict to a variety (--ideal) or coordinate by coordinate (--point)")
    sp.add_argument("--f", required=True)
    _ideal_flags(sp, required=False)
    sp.add_argument("--point", help="ordered steps, e.g. 'x=0, y=0'")
    _common(sp)
    sp.set_defaults(run=cmd_restrict)

    sp = sub.add_parser("gb", help="reduced Groebner basis")
    _ideal_flags(sp)
    _common(sp)
    sp.set_defaults(run=cmd_gb)

    for verb, fn, text in (("nf", cmd_nf, "normal form modulo an ideal"),
                           ("member", cmd_member, "ideal membership (exit 1 if not a member)")):
        sp = sub.add_parser(verb, help=text)
        sp.add_argument("--expr", required=True)
        _ideal_flags(sp)
        _common(sp)
        sp.set_defaults(run=fn)

    sp = sub.add_parser("extend", help="extend a regular function from a subvariety and verify the result")
    sp.add_argument("--problem", required=True, help="problem file")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    _common(sp)
    sp.set_defaults(run=cmd_extend)

    sp = sub.add_parser("certify", help="degree criterion (--f) or a positivity certificate (--expr, --squares)")
    sp.add_argument("--f", help="p/q for the continuity-at-origin degree test")
    sp.add_argument("--expr", help="certificate target")
    sp.add_argument("--squares", help="'c : s; c : s' meaning sum of c*s^2")
    sp.add_argument("--side-terms", help="'m : s; ...' meaning sum of m*s^2 with m assumed >= 0")
    sp.add_argument("--radical", help="e.g. 'u^3 = 1 + z^2'")
    _common(sp)
    sp.set_defaults(run=cmd_certify)

    sp = sub.add_parser("verify-example", help="run a worked-example scenario (EX1..EX5)")
    sp.add_argument("scenario", nargs="?")
    sp.add_argument("--list", action="store_true", help="list scenarios")
    sp.add_argument("--tamper", action="store_true", help="run the mutated twin (expected to fail)")
    _common(sp)
    sp.set_defaults(run=cmd_verify_example)

    sp = sub.add_parser("padic-eval", help="evaluate at p-adic inputs with precision tracking")
    sp.add_argument("--f", required=True)
    sp.add_argument("--padic", help="p:prec, inputs are known modulo p^prec")
    sp.add_argument("--point", help="e.g. 'x=3, y=9'")
    sp.add_argument("--min-digits", type=int, default=1)
    _common(sp)
    sp.set_defaults(run=cmd_padic_eval)
    return parser


def run_command(args: argparse.Namespace) -> Outcome:
    try:
        return args.run(args)
    except (UsageError, ParseError, BadProblem, IncompletePoint, KeyError, ValueError) as exc:
        msg = str(exc) if not isinstance(exc, KeyError) else exc.args[0]
        return Outcome(USAGE, {"command": args.verb, "error": msg}, [f"error: {msg}"])
    except BudgetExceeded as exc:
        return Outcome(REFUTED, {"command": args.verb, "error": str(exc)}, [f"budget exceeded: {exc}"])
    except RatcontError as exc:
        return Outcome(REFUTED, {"command": args.verb, "error": str(exc)}, [f"{type(exc).__name__}: {exc}"])


def main(argv: list[str] | None = None, out: Callable[[str], None] | None = None) -> int:
    out = out or (lambda s: print(s))
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    outcome = run_command(args)
    if args.json:
        out(emit_report(outcome.payload))
    else:
        stream = sys.stderr if outcome.status == USAGE else None
        for line in outcome.lines:
            if stream:
                print(line, file=stream)
            else:
                out(line)
    return outcome.status

