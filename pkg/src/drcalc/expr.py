"""Expression language for the calculator.

Grammar (left-associative, unary minus binds tightest)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | primary
    primary := NUMBER | CONST | FUNC "(" args ")" | "(" expr ")"

Numbers are finite decimals; a negative integer part may be written in floor
form, ``(-8).765``.  Constants are ``pi``, ``e`` and ``sqrt2``; functions are
``sqrt``, ``recip``, ``glb`` (one or more arguments) and ``pair`` (two).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .arithmetic import add, div, mul, negate, reciprocal, sub
from .computable import CONSTANTS, constant, sqrt_real
from .constructions import cantor_pair, glb_finite
from .decimal_stream import DEFAULT_FUEL, DecimalReal, from_scaled
from .exact_scaled import ScaledDecimal

__all__ = [
    "Number",
    "Const",
    "Unary",
    "Binary",
    "Call",
    "Paren",
    "Expr",
    "ParseError",
    "parse_expr",
    "render",
    "to_real",
]


@dataclass(frozen=True)
class Number:
    value: ScaledDecimal


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # "neg" | "recip" | "sqrt"
    arg: Expr


@dataclass(frozen=True)
class Binary:
    op: str  # "+" | "-" | "*" | "/"
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Call:
    name: str  # "glb" | "pair"
    args: tuple[Expr, ...]


@dataclass(frozen=True)
class Paren:
    inner: Expr


Expr = Union[Number, Const, Unary, Binary, Call, Paren]

UNARY_FUNCS = ("sqrt", "recip")
CALLS = {"glb": (1, None), "pair": (2, 2)}


class ParseError(ValueError):
    def __init__(self, text: str, pos: int, expected: set[str]):
        self.text = text
        self.offset = len(text[:pos].encode("utf-8"))
        self.expected = frozenset(expected)
        found = repr(text[pos]) if pos < len(text) else "end of input"
        want = ", ".join(sorted(self.expected))
        super().__init__(f"syntax error at offset {self.offset}: found {found}, expected one of {want}")


# -- tokens --------------------------------------------------------------------

_MINUS = "-−"
_FLOOR_LIT = re.compile(r"\(\s*[-−]?\d+\s*\)\.\d+")
_NUMBER = re.compile(r"\d+(?:\.\d*)?|\.\d+")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num" | "name" | "op" | "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out, i = [], 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "(" and (m := _FLOOR_LIT.match(text, i)):
            out.append(_Tok("num", re.sub(r"\s", "", m.group()), i))
            i = m.end()
            continue
        if m := _NUMBER.match(text, i):
            out.append(_Tok("num", m.group(), i))
            i = m.end()
            continue
        if m := _NAME.match(text, i):
            out.append(_Tok("name", m.group(), i))
            i = m.end()
            continue
        if c in "+*/(),":
            out.append(_Tok("op", c, i))
        elif c in _MINUS:
            out.append(_Tok("op", "-", i))
        else:
            raise ParseError(text, i, {"number", "name", "operator"})
        i += 1
    out.append(_Tok("end", "", len(text)))
    return out


_OPERAND = {"number", "constant", "function", "'('", "'-'"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected):
        raise ParseError(self.text, self.tok.pos, set(expected))

    def eat(self, op: str) -> None:
        if self.tok.kind == "op" and self.tok.text == op:
            self.i += 1
        else:
            self.fail({repr(op)})

    def at_op(self, *ops) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            self.fail({"'+'", "'-'", "'*'", "'/'", "end of input"})
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.at_op("+", "-"):
            op = self.tok.text
            self.i += 1
            e = Binary(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.at_op("*", "/"):
            op = self.tok.text
            self.i += 1
            e = Binary(op, e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.at_op("-"):
            self.i += 1
            return Unary("neg", self.unary())
        return self.primary()

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Number(ScaledDecimal.parse(t.text))
        if t.kind == "name":
            name = t.text
            if name in CONSTANTS:
                self.i += 1
                return Const(name)
            if name in UNARY_FUNCS or name in CALLS:
                self.i += 1
                self.eat("(")
                args = [self.expr()]
                while self.at_op(","):
                    self.i += 1
                    args.append(self.expr())
                close = self.tok
                self.eat(")")
                lo, hi = CALLS.get(name, (1, 1))
                if len(args) < lo or (hi is not None and len(args) > hi):
                    raise ParseError(self.text, close.pos, {f"{lo if hi == lo else str(lo) + '+'} argument(s) to {name}"})
                if name in UNARY_FUNCS:
                    return Unary(name, args[0])
                return Call(name, tuple(args))
            self.fail(_OPERAND)
        if self.at_op("("):
            self.i += 1
            inner = self.expr()
            self.eat(")")
            return Paren(inner)
        self.fail(_OPERAND)


def parse_expr(text: str) -> Expr:
    """Parse ``text``; raises :class:`ParseError` with the byte offset and
    the set of tokens that would have been accepted there."""
    return _Parser(text).parse()


def render(e: Expr) -> str:
    """Source text for ``e``; parsing it back gives an expression that
    renders identically."""
    if isinstance(e, Number):
        return str(e.value)
    if isinstance(e, Const):
        return e.name
    if isinstance(e, Paren):
        return f"({render(e.inner)})"
    if isinstance(e, Unary):
        if e.op == "neg":
            return "-" + render(e.arg)
        return f"{e.op}({render(e.arg)})"
    if isinstance(e, Binary):
        return f"{render(e.left)} {e.op} {render(e.right)}"
    if isinstance(e, Call):
        return f"{e.name}({', '.join(render(a) for a in e.args)})"
    raise TypeError(f"not an expression node: {e!r}")


def to_real(e: Expr, fuel: int = DEFAULT_FUEL) -> DecimalReal:
    """Evaluate to a :class:`DecimalReal`; digits are produced on demand."""
    if isinstance(e, Number):
        return from_scaled(e.value)
    if isinstance(e, Const):
        return constant(e.name)
    if isinstance(e, Paren):
        return to_real(e.inner, fuel)
    if isinstance(e, Unary):
        x = to_real(e.arg, fuel)
        if e.op == "neg":
            return negate(x, fuel)
        if e.op == "recip":
            return reciprocal(x, fuel)
        return sqrt_real(x)
    if isinstance(e, Binary):
        op = {"+": add, "-": sub, "*": mul, "/": div}[e.op]
        return op(to_real(e.left, fuel), to_real(e.right, fuel), fuel)
    if isinstance(e, Call):
        args = [to_real(a, fuel) for a in e.args]
        return glb_finite(args) if e.name == "glb" else cantor_pair(*args)
    raise TypeError(f"not an expression node: {e!r}")
