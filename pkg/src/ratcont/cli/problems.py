"""Reader for extension-problem files.

    # circle, f = x/(2+y)
    [variety]
    vars = x, y
    x^2 + y^2 - 1

    [rep]
    point = x=1, y=0
    p = x
    q = 2 + y

    [samples]
    x=0, y=0
    x=2, y=-1

``[variety]`` takes one generator per line (or ``ideal = g1, g2``).
``[rep]`` may repeat; ``f = p/q`` is shorthand for separate ``p`` and
``q`` lines, and ``q`` defaults to 1.
"""

from __future__ import annotations

from ratcont.cli.expr import (
    parse_assignments,
    parse_expression,
    parse_generators,
    parse_poly,
    split_top_level,
    to_pair,
)
from ratcont.corealg.poly import Poly, sort_vars
from ratcont.errors import ParseError
from ratcont.extend import ExtensionProblem, LocalRep

_SECTIONS = ("variety", "rep", "samples")


def _located(exc: ParseError, lineno: int) -> ParseError:
    return ParseError(f"{exc.message} in problem file", lineno, exc.column)


def parse_problem(text: str) -> ExtensionProblem:
    section = None
    variables: list[str] = []
    ideal = []
    reps: list[dict] = []
    samples = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("[") and line.endswith("]"):
                section = line[1:-1].strip().lower()
                if section not in _SECTIONS:
                    raise ParseError(f"unknown section [{section}]", 1, 1)
                if section == "rep":
                    reps.append({})
                continue
            if section is None:
                raise ParseError("content before the first section", 1, 1)
            if section == "samples":
                samples.append(parse_assignments(line))
                continue
            key, sep, value = line.partition("=")
            key = key.strip().lower()
            if not sep:
                if section != "variety":
                    raise ParseError(f"expected 'key = value', found {line!r}", 1, 1)
                ideal.extend(parse_generators(line))
            elif section == "variety" and key == "vars":
                variables.extend(split_top_level(value))
            elif section == "variety" and key == "ideal":
                ideal.extend(parse_generators(value))
            elif section == "rep" and key in ("point", "f", "p", "q"):
                if key in reps[-1]:
                    raise ParseError(f"duplicate '{key}' in [rep]", 1, 1)
                if key == "point":
                    reps[-1][key] = parse_assignments(value)
                elif key == "f":
                    reps[-1][key] = to_pair(parse_expression(value))
                else:
                    reps[-1][key] = parse_poly(value)
            else:
                raise ParseError(f"unknown key {key!r} in [{section}]", 1, 1)
        except ParseError as exc:
            raise _located(exc, lineno) from None
    local = []
    for i, rep in enumerate(reps, start=1):
        if "point" not in rep or ("f" in rep) == ("p" in rep) or ("f" in rep and "q" in rep):
            raise ParseError(f"[rep] number {i} needs 'point' and either 'f' or 'p' (with optional 'q')", 1, 1)
        p, q = rep["f"] if "f" in rep else (rep["p"], rep.get("q", Poly.const(1)))
        local.append(LocalRep(rep["point"], p, q))
    if not variables:
        # no explicit list: every variable mentioned anywhere, in natural order
        seen = [v for g in ideal for v in g.gens]
        for rep in local:
            seen += list(rep.point) + list(rep.p.gens) + list(rep.q.gens)
        variables = list(sort_vars(seen))
    return ExtensionProblem(tuple(variables), tuple(ideal), tuple(local), tuple(samples))
