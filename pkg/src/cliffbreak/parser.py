"""Multivector expression language.

Grammar (whitespace insensitive)::

    expr   := ["-"] term (("+" | "-") term)*
    term   := factor ("*" factor)* ["/" integer]
    factor := integer | unit | symbol | "(" expr ")"
            | "rev(" expr ")" | "grade(" expr "," integer ")"
    unit   := "i" | "j" | "k"

Symbols are generator names (``g0``..``g3`` and ``g5`` in Dirac contexts,
``e1``..``en`` otherwise) or names bound in the REPL.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import (
    AlgebraDescriptor,
    Multivector,
    Ring,
    grade_project,
    reverse,
)
from .errors import CliffordError, DivisionByZero, ParseError, UndefinedSymbol

MAX_INPUT = 64 * 1024
MAX_DEPTH = 200
MAX_DIGITS = 4000

UNITS = ("i", "j", "k")
KEYWORDS = ("rev", "grade")


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Unit:
    name: str


@dataclass(frozen=True)
class Symbol:
    name: str


@dataclass(frozen=True)
class Group:
    expr: object


@dataclass(frozen=True)
class Rev:
    expr: object


@dataclass(frozen=True)
class Grade:
    expr: object
    k: int


@dataclass(frozen=True)
class Product:
    factors: tuple
    divisor: int | None = None


@dataclass(frozen=True)
class Sum:
    terms: tuple  # ((sign, node), ...), sign in "+-"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/(),]))")
_SPACE = re.compile(r"\s*")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num", "ident", "op", "eof"
    text: str
    pos: int


def tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    n = len(text)
    while True:
        pos = _SPACE.match(text, pos).end()
        if pos >= n:
            toks.append(_Tok("eof", "", n))
            return toks
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos,
                             ("integer", "unit", "symbol", "(", "-"))
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), start))
        pos = m.end()


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0
        self.depth = 0
        self.closed_term = False

    def peek(self):
        return self.toks[self.i]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        t = self.peek()
        if t.kind != "op" or t.text != op:
            raise ParseError(f"expected {op!r}", t.pos, (op,))
        return self.advance()

    def integer(self):
        t = self.peek()
        if t.kind != "num":
            raise ParseError("expected an integer", t.pos, ("integer",))
        if len(t.text) > MAX_DIGITS:
            raise ParseError("integer literal too long", t.pos)
        self.advance()
        return int(t.text)

    def parse(self):
        node = self.expr()
        t = self.peek()
        if t.kind != "eof":
            # a divisor closes its term, so only + and - may follow it
            ops = ("+", "-") if self.closed_term else ("+", "-", "*", "/")
            raise ParseError(f"unexpected {t.text!r}", t.pos, ops + ("end of input",))
        return node

    def expr(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ParseError("nesting too deep", self.peek().pos)
        terms = []
        sign = "+"
        t = self.peek()
        if t.kind == "op" and t.text == "-":
            self.advance()
            sign = "-"
        terms.append((sign, self.term()))
        while True:
            t = self.peek()
            if t.kind == "op" and t.text in "+-":
                self.advance()
                terms.append((t.text, self.term()))
            else:
                break
        self.depth -= 1
        if len(terms) == 1 and terms[0][0] == "+":
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self):
        factors = [self.factor()]
        divisor = None
        while True:
            t = self.peek()
            if t.kind == "op" and t.text == "*":
                self.advance()
                factors.append(self.factor())
            elif t.kind == "op" and t.text == "/":
                self.advance()
                divisor = self.integer()
                break
            else:
                break
        self.closed_term = divisor is not None
        if len(factors) == 1 and divisor is None:
            return factors[0]
        return Product(tuple(factors), divisor)

    def factor(self):
        t = self.peek()
        if t.kind == "num":
            return Num(self.integer())
        if t.kind == "op" and t.text == "(":
            self.advance()
            inner = self.expr()
            self.expect_op(")")
            return Group(inner)
        if t.kind == "ident":
            self.advance()
            if t.text in UNITS:
                return Unit(t.text)
            if t.text in KEYWORDS:
                self.expect_op("(")
                inner = self.expr()
                if t.text == "rev":
                    self.expect_op(")")
                    return Rev(inner)
                self.expect_op(",")
                k = self.integer()
                self.expect_op(")")
                return Grade(inner, k)
            return Symbol(t.text)
        what = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"unexpected {what}", t.pos, ("integer", "unit", "symbol", "(", "rev(", "grade("))


def parse(text) -> object:
    """Parse ``text`` (str or bytes) into an AST; raises :class:`ParseError`."""
    if isinstance(text, (bytes, bytearray)):
        if len(text) > MAX_INPUT:
            raise ParseError("input exceeds 64 KiB", MAX_INPUT)
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("invalid UTF-8", exc.start) from None
    if len(text.encode("utf-8", "surrogatepass")) > MAX_INPUT:
        raise ParseError("input exceeds 64 KiB", MAX_INPUT)
    return _Parser(text).parse()


def pretty(node) -> str:
    """Render an AST; ``parse(pretty(node)) == node``."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, (Unit, Symbol)):
        return node.name
    if isinstance(node, Group):
        return f"({pretty(node.expr)})"
    if isinstance(node, Rev):
        return f"rev({pretty(node.expr)})"
    if isinstance(node, Grade):
        return f"grade({pretty(node.expr)}, {node.k})"
    if isinstance(node, Product):
        s = "*".join(pretty(f) for f in node.factors)
        return s if node.divisor is None else f"{s}/{node.divisor}"
    if isinstance(node, Sum):
        out = []
        for n, (sign, term) in enumerate(node.terms):
            if n == 0:
                out.append(("-" if sign == "-" else "") + pretty(term))
            else:
                out.append(f" {sign} {pretty(term)}")
        return "".join(out)
    raise TypeError(f"not an expression node: {node!r}")


# ---------------------------------------------------------------------------
# contexts and evaluation

_CONTEXT = re.compile(r"^cl\((\d+),(\d+)\)(?::([rch]))?$")


def parse_context(name: str) -> AlgebraDescriptor:
    """``dirac-c``, ``dirac-h`` or ``cl(p,q)[:r|c|h]``."""
    key = name.strip().lower().replace(" ", "")
    if key == "dirac-c":
        return AlgebraDescriptor.dirac_algebra(Ring.COMPLEX)
    if key == "dirac-h":
        return AlgebraDescriptor.dirac_algebra(Ring.QUATERNION)
    m = _CONTEXT.match(key)
    if not m:
        raise ValueError(f"unknown algebra context {name!r}")
    ring = Ring.parse(m.group(3) or "r")
    return AlgebraDescriptor.generic(int(m.group(1)), int(m.group(2)), ring)


def symbol_value(name: str, ctx: AlgebraDescriptor):
    """Generator or derived symbol of the context, or ``None``."""
    if name in ctx.generator_names:
        return Multivector.generator(ctx, ctx.generator_names.index(name))
    if ctx.dirac and name == "g5":
        pseudo = Multivector.blade(ctx, 0b1111)
        return Multivector.unit(ctx, "i") * pseudo
    return None


def evaluate(node, ctx: AlgebraDescriptor, env: dict | None = None) -> Multivector:
    if isinstance(node, Num):
        return Multivector.scalar(ctx, node.value)
    if isinstance(node, Unit):
        return Multivector.unit(ctx, node.name)
    if isinstance(node, Symbol):
        value = symbol_value(node.name, ctx)
        if value is None and env and node.name in env:
            value = env[node.name]
            if value.descriptor != ctx:
                raise CliffordError(f"{node.name} is bound in {value.descriptor}, not {ctx}")
        if value is None:
            raise UndefinedSymbol(f"symbol {node.name!r} is not defined in {ctx}")
        return value
    if isinstance(node, Group):
        return evaluate(node.expr, ctx, env)
    if isinstance(node, Rev):
        return reverse(evaluate(node.expr, ctx, env))
    if isinstance(node, Grade):
        return grade_project(evaluate(node.expr, ctx, env), node.k)
    if isinstance(node, Product):
        out = evaluate(node.factors[0], ctx, env)
        for f in node.factors[1:]:
            out = out * evaluate(f, ctx, env)
        if node.divisor is not None:
            if node.divisor == 0:
                raise DivisionByZero("division by zero")
            out = out / node.divisor
        return out
    if isinstance(node, Sum):
        out = Multivector.zero(ctx)
        for sign, term in node.terms:
            v = evaluate(term, ctx, env)
            out = out - v if sign == "-" else out + v
        return out
    raise TypeError(f"not an expression node: {node!r}")


def eval_text(text, ctx: AlgebraDescriptor | str, env: dict | None = None) -> Multivector:
    if isinstance(ctx, str):
        ctx = parse_context(ctx)
    return evaluate(parse(text), ctx, env)
