"""Pratt parser for polynomial and rational expressions, plus the small text formats built on it.

Grammar, loosest to tightest: binary ``+ -``, then ``* /``, then unary
``-``, then right-associative ``^`` whose exponent must be a
non-negative integer literal.  A ``/`` with a non-constant divisor is only
allowed at the top of an expression, where it splits numerator from
denominator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from ratcont.corealg.poly import Poly
from ratcont.corealg.radical import RadicalRing, RadPoly, rad_exact_divide
from ratcont.corealg.ratfun import RatFun
from ratcont.errors import ParseError, UnsupportedExponent


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


Expr = Union[Num, Var, Neg, Add, Sub, Mul, Div, Pow]

# -- tokens ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()]))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # num, name, op, end
    text: str
    pos: int


def _position(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _error(text: str, pos: int, message: str, cls=ParseError) -> ParseError:
    line, col = _position(text, pos)
    return cls(message, line, col)


def _tokenize(text: str) -> list[_Tok]:
    toks, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            toks.append(_Tok("end", "", pos))
            return toks
        m = _TOKEN.match(text, pos)
        if not m:
            raise _error(text, pos, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        tok = m.group(kind)
        toks.append(_Tok(kind, "^" if tok == "**" else tok, m.start(kind)))
        pos = m.end()


# -- parser ------------------------------------------------------------------

_BINARY = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 40}
_UNARY = 30


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> None:
        if self.tok.text != text or self.tok.kind == "end":
            raise self.error(f"expected {text!r}, found {self.describe(self.tok)}")
        self.advance()

    def error(self, message: str, pos: int | None = None, cls=ParseError) -> ParseError:
        return _error(self.text, self.tok.pos if pos is None else pos, message, cls)

    @staticmethod
    def describe(tok: _Tok) -> str:
        return "end of input" if tok.kind == "end" else repr(tok.text)

    def parse(self) -> Expr:
        if self.tok.kind == "end":
            raise self.error("empty expression")
        node = self.expression(0)
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.describe(self.tok)}")
        return node

    def expression(self, rbp: int) -> Expr:
        left = self.prefix()
        while self.tok.kind == "op" and _BINARY.get(self.tok.text, -1) > rbp:
            op = self.advance()
            if op.text == "^":
                left = Pow(left, self.exponent())
                continue
            right = self.expression(_BINARY[op.text])
            left = self.combine(op, left, right)
        return left

    def prefix(self) -> Expr:
        tok = self.advance()
        if tok.kind == "num":
            return Num(Fraction(tok.text))
        if tok.kind == "name":
            return Var(tok.text)
        if tok.text == "-":
            return Neg(self.expression(_UNARY))
        if tok.text == "+":
            return self.expression(_UNARY)
        if tok.text == "(":
            node = self.expression(0)
            self.expect(")")
            return node
        raise _error(self.text, tok.pos, f"unexpected {self.describe(tok)}")

    def exponent(self) -> int:
        start = self.tok.pos
        # right associative: x^2^3 is x^(2^3), which is then rejected below
        node = self.expression(_BINARY["^"] - 1)
        if isinstance(node, Num) and node.value.denominator == 1:
            return int(node.value)
        raise self.error("exponents must be non-negative integer literals", start, UnsupportedExponent)

    def combine(self, op: _Tok, left: Expr, right: Expr) -> Expr:
        if op.text == "+":
            return Add(left, right)
        if op.text == "-":
            return Sub(left, right)
        if op.text == "*":
            return Mul(left, right)
        if isinstance(left, Num) and isinstance(right, Num):
            if not right.value:
                raise _error(self.text, op.pos, "division by zero")
            return Num(left.value / right.value)
        return Div(left, right, op.pos)


def _check_division(node: Expr, text: str, at_root: bool) -> None:
    if isinstance(node, Div):
        if not at_root and not isinstance(node.right, Num):
            raise _error(text, node.pos, "only a single top-level '/' may have a non-constant divisor")
        if isinstance(node.right, Num) and not node.right.value:
            raise _error(text, node.pos, "division by zero")
        _check_division(node.left, text, False)
        _check_division(node.right, text, False)
    elif isinstance(node, (Add, Sub, Mul)):
        _check_division(node.left, text, False)
        _check_division(node.right, text, False)
    elif isinstance(node, Neg):
        _check_division(node.operand, text, False)
    elif isinstance(node, Pow):
        _check_division(node.base, text, False)


def parse_expression(text: str) -> Expr:
    """Parse ``text`` into an AST; raises :class:`ParseError` with line and column."""
    node = _Parser(text).parse()
    _check_division(node, text, True)
    return node


# -- printing ----------------------------------------------------------------

_LEVEL = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4, Var: 5, Num: 5}
_SYMBOL = {Add: " + ", Sub: " - ", Mul: "*", Div: "/"}


def _level(node: Expr) -> int:
    if isinstance(node, Num) and node.value.denominator != 1:
        return 2
    return _LEVEL[type(node)]


def _wrap(node: Expr, minimum: int) -> str:
    s = format_expression(node)
    return f"({s})" if _level(node) < minimum else s


def format_expression(node: Expr) -> str:
    """Print with minimal parentheses; ``parse_expression`` inverts it exactly."""
    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, 3)
    if isinstance(node, Pow):
        return f"{_wrap(node.base, 5)}^{node.exp}"
    lvl = _LEVEL[type(node)]
    return _wrap(node.left, lvl) + _SYMBOL[type(node)] + _wrap(node.right, lvl + 1)


# -- evaluation --------------------------------------------------------------

def _fold(node: Expr, leaf, one):
    if isinstance(node, Num):
        return one * node.value
    if isinstance(node, Var):
        return leaf(node.name)
    if isinstance(node, Neg):
        return -_fold(node.operand, leaf, one)
    if isinstance(node, Pow):
        return _fold(node.base, leaf, one) ** node.exp
    a, b = _fold(node.left, leaf, one), _fold(node.right, leaf, one)
    if isinstance(node, Add):
        return a + b
    if isinstance(node, Sub):
        return a - b
    if isinstance(node, Mul):
        return a * b
    return a * (1 / node.right.value)  # constant divisor, checked at parse time


def split_fraction(node: Expr) -> tuple[Expr, Expr]:
    """Top-level numerator and denominator (denominator ``1`` if there is no ``/``)."""
    if isinstance(node, Div) and not isinstance(node.right, Num):
        return node.left, node.right
    return node, Num(Fraction(1))


def to_poly(node: Expr) -> Poly:
    num, den = split_fraction(node)
    if den != Num(Fraction(1)):
        raise ParseError("expected a polynomial, found a quotient", 1, 1)
    return _fold(num, Poly.var, Poly.const(1))


def to_pair(node: Expr) -> tuple[Poly, Poly]:
    """Numerator and denominator polynomials exactly as written."""
    num, den = split_fraction(node)
    return _fold(num, Poly.var, Poly.const(1)), _fold(den, Poly.var, Poly.const(1))


def to_ratfun(node: Expr) -> RatFun:
    num, den = to_pair(node)
    if not den:
        raise ParseError("denominator is identically zero", 1, 1)
    return RatFun(num, den)


def to_radpoly(node: Expr, ring: RadicalRing) -> RadPoly:
    """Evaluate in ``ring``; a top-level quotient must divide exactly."""
    num, den = split_fraction(node)
    one = ring.element(1)
    a = _fold(num, lambda v: ring.element(Poly.var(v)), one)
    b = _fold(den, lambda v: ring.element(Poly.var(v)), one)
    return a if b == one else rad_exact_divide(a, b)


def parse_poly(text: str) -> Poly:
    return to_poly(parse_expression(text))


def parse_ratfun(text: str) -> RatFun:
    return to_ratfun(parse_expression(text))


# -- small formats -----------------------------------------------------------

def parse_radical(text: str) -> RadicalRing:
    """``"u^3 = 1 + z^2"`` -> the ring Q[z][u]/(u^3 - (1 + z^2))."""
    if text.count("=") != 1:
        raise ParseError("a radical declaration looks like 'u^k = m'", 1, 1)
    lhs_text, rhs_text = text.split("=")
    lhs = parse_expression(lhs_text)
    if not (isinstance(lhs, Pow) and isinstance(lhs.base, Var)):
        raise ParseError("left side of a radical declaration must be 'name^k'", 1, 1)
    offset = len(lhs_text) + 1
    try:
        modulus = parse_poly(rhs_text)
    except ParseError as exc:
        raise ParseError(exc.message, exc.line, exc.column + offset if exc.line == 1 else exc.column) from None
    try:
        return RadicalRing(lhs.base.name, lhs.exp, modulus)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from None


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside parentheses."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts if p.strip()]


def parse_assignments(text: str) -> dict[str, Fraction]:
    """``"x=1, y=-1/2"`` -> ``{"x": 1, "y": -1/2}``."""
    out = {}
    for part in split_top_level(text):
        if part.count("=") != 1:
            raise ParseError(f"expected 'name=value', found {part!r}", 1, 1)
        name, value = (s.strip() for s in part.split("="))
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise ParseError(f"bad variable name {name!r}", 1, 1)
        p = parse_poly(value)
        if not p.is_constant():
            raise ParseError(f"value for {name} must be a rational constant", 1, 1)
        out[name] = p.constant_value()
    return out


def parse_curve(text: str, param: str = "t") -> tuple[dict[str, Poly], dict[str, Fraction]]:
    """``"x=t, y=2*t^3, z=0 @ (0,0,1)"`` -> (components, base point).

    The base tuple lists values in the order the components are written.
    """
    body, _, base_text = text.partition("@")
    comps: dict[str, Poly] = {}
    for part in split_top_level(body):
        if part.count("=") != 1:
            raise ParseError(f"expected 'name=expression', found {part!r}", 1, 1)
        name, expr = (s.strip() for s in part.split("="))
        comps[name] = parse_poly(expr)
    if not comps:
        raise ParseError("a curve needs at least one component", 1, 1)
    base = {v: Fraction(0) for v in comps}
    if base_text.strip():
        inner = base_text.strip()
        if not (inner.startswith("(") and inner.endswith(")")):
            raise ParseError("base point must be a parenthesized tuple", 1, len(body) + 2)
        values = split_top_level(inner[1:-1])
        if len(values) != len(comps):
            raise ParseError(f"base point has {len(values)} entries for {len(comps)} components", 1, len(body) + 2)
        for v, val in zip(comps, values):
            p = parse_poly(val)
            if not p.is_constant():
                raise ParseError(f"base coordinate {val!r} is not a constant", 1, len(body) + 2)
            base[v] = p.constant_value()
    for v, c in comps.items():
        if set(c.gens) - {param}:
            raise ParseError(f"component {v} may only involve {param}", 1, 1)
    return comps, base


def parse_generators(text: str) -> list[Poly]:
    """Comma-separated generators, or lines of a file (``#`` starts a comment)."""
    gens = []
    for line in text.splitlines() or [text]:
        line = line.split("#", 1)[0]
        gens.extend(parse_poly(part) for part in split_top_level(line))
    return gens
