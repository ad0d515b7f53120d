"""Smooth expressions of one variable ``u``.

A small recursive-descent parser for the grammar used in curve-spec files::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom (("^" | "**") unary)?
    atom   := NUMBER | "u" | "t" | "pi" | FUNC "(" expr ")" | "(" expr ")"
    FUNC   := "sin" | "cos" | "sqrt"

Parsed trees are callables accepting a float, a numpy array or a
:class:`~helifront.jets.Jet`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from helifront import jets

_FUNCS = {"sin": jets.sin, "cos": jets.cos, "sqrt": jets.sqrt}
_TOKEN = re.compile(r"\s*(?:(\d+\.\d*(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?|\d+(?:[eE][-+]?\d+)?)|(\*\*|[-+*/^()])|([A-Za-z_]\w*))")


class ExpressionError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.pos = pos


class Expr:
    def __call__(self, u):
        raise NotImplementedError

    def is_constant(self) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class Num(Expr):
    value: float

    def __call__(self, u):
        return self.value

    def is_constant(self):
        return True

    def __str__(self):
        return repr(self.value)


@dataclass(frozen=True)
class Var(Expr):
    def __call__(self, u):
        return u

    def is_constant(self):
        return False

    def __str__(self):
        return "u"


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr

    def __call__(self, u):
        return -self.arg(u)

    def is_constant(self):
        return self.arg.is_constant()

    def __str__(self):
        return f"(-{self.arg})"


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    def __call__(self, u):
        x, y = self.left(u), self.right(u)
        if self.op == "+":
            return x + y
        if self.op == "-":
            return x - y
        if self.op == "*":
            return x * y
        return x / y

    def is_constant(self):
        return self.left.is_constant() and self.right.is_constant()

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: float

    def __call__(self, u):
        return self.base(u) ** self.exponent

    def is_constant(self):
        return self.base.is_constant()

    def __str__(self):
        return f"({self.base} ^ {self.exponent!r})"


@dataclass(frozen=True)
class Call(Expr):
    name: str
    arg: Expr

    def __call__(self, u):
        return _FUNCS[self.name](self.arg(u))

    def is_constant(self):
        return self.arg.is_constant()

    def __str__(self):
        return f"{self.name}({self.arg})"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKEN.match(stripped, pos)
            if m is None or m.end() == pos:
                raise ExpressionError("unexpected character", text, pos + _lead(stripped, pos))
            start = m.start(m.lastindex)
            kind = ("num", "op", "name")[m.lastindex - 1]
            self.tokens.append((kind, m.group(m.lastindex), start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, sym: str):
        kind, val, pos = self.take()
        if val != sym:
            raise ExpressionError(f"expected {sym!r}", self.text, pos)

    def parse(self) -> Expr:
        if not self.tokens:
            raise ExpressionError("empty expression", self.text, 0)
        e = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExpressionError(f"unexpected {val!r}", self.text, pos)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            e = BinOp(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            e = BinOp(op, e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.peek()[1] in ("-", "+"):
            op = self.take()[1]
            arg = self.unary()
            return Neg(arg) if op == "-" else arg
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[1] in ("^", "**"):
            _, _, pos = self.take()
            exponent = self.unary()
            if not exponent.is_constant():
                raise ExpressionError("exponent must be constant", self.text, pos)
            return Pow(base, float(exponent(0.0)))
        return base

    def atom(self) -> Expr:
        kind, val, pos = self.take()
        if kind == "num":
            return Num(float(val))
        if kind == "name":
            if val in ("u", "t"):
                return Var()
            if val == "pi":
                return Num(math.pi)
            if val in _FUNCS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(val, arg)
            raise ExpressionError(f"unknown name {val!r}", self.text, pos)
        if val == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "end":
            raise ExpressionError("unexpected end of expression", self.text, pos)
        raise ExpressionError(f"unexpected {val!r}", self.text, pos)


def _lead(text: str, pos: int) -> int:
    return len(text[pos:]) - len(text[pos:].lstrip())


def parse(text) -> Expr:
    """Parse ``text`` into an expression tree; trees and numbers pass through."""
    if isinstance(text, Expr):
        return text
    if isinstance(text, (int, float)):
        return Num(float(text))
    return _Parser(str(text)).parse()
