"""Tiny closed-form expression language for polarizations and seed angles.

Grammar (recursive descent, no eval):

    expr   :=  term  (("+" | "-") term)*
    term   :=  unary (("*" | "/") unary)*
    unary  :=  ("+" | "-") unary | atom
    atom   :=  NUMBER | "pi" | "e" | "s" | NAME "(" expr ")" | "(" expr ")"

with NAME one of sin, cos, exp.  Compiled expressions are callables that
accept a scalar or a numpy array for s and evaluate vectorized.
"""

from __future__ import annotations

import math
import re

import numpy as np

__all__ = ["ExpressionError", "Expression", "parse_expression"]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/(),]))"
)

_CONSTANTS = {"pi": math.pi, "e": math.e}
_FUNCTIONS = {"sin": np.sin, "cos": np.cos, "exp": np.exp}


class ExpressionError(ValueError):
    """Raised for syntax errors, with the offending position in the text."""


class Expression:
    """A compiled expression; call with a float or array to evaluate."""

    def __init__(self, text: str, fn, constant: bool):
        self.text = text
        self._fn = fn
        self.is_constant = constant

    def __call__(self, s):
        out = self._fn(s)
        if np.isscalar(s) or np.ndim(s) == 0:
            return float(out)
        return np.broadcast_to(np.asarray(out, dtype=float), np.shape(s)).copy()

    def __repr__(self):  # pragma: no cover - debugging nicety
        return f"Expression({self.text!r})"


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ExpressionError(
                f"unexpected character {stripped[0]!r} at position {pos}")
        if m.lastgroup == "num":
            tokens.append(("num", float(m.group("num")), m.start("num")))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ExpressionError(f"expected {op!r} at position {pos} in {self.text!r}")

    # Each parse method returns (callable, is_constant).
    def expr(self):
        fn, const = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.next()[1]
            rfn, rconst = self.term()
            if op == "+":
                fn = (lambda a, b: lambda s: a(s) + b(s))(fn, rfn)
            else:
                fn = (lambda a, b: lambda s: a(s) - b(s))(fn, rfn)
            const = const and rconst
        return fn, const

    def term(self):
        fn, const = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.next()[1]
            rfn, rconst = self.unary()
            if op == "*":
                fn = (lambda a, b: lambda s: a(s) * b(s))(fn, rfn)
            else:
                fn = (lambda a, b: lambda s: a(s) / b(s))(fn, rfn)
            const = const and rconst
        return fn, const

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            fn, const = self.unary()
            if val == "-":
                return (lambda a: lambda s: -a(s))(fn), const
            return fn, const
        return self.atom()

    def atom(self):
        kind, val, pos = self.next()
        if kind == "num":
            return (lambda v: lambda s: v)(val), True
        if kind == "name":
            if val in _CONSTANTS:
                return (lambda v: lambda s: v)(_CONSTANTS[val]), True
            if val == "s":
                return (lambda s: s), False
            if val in _FUNCTIONS:
                self.expect_op("(")
                inner, const = self.expr()
                self.expect_op(")")
                return (lambda f, a: lambda s: f(a(s)))(_FUNCTIONS[val], inner), const
            raise ExpressionError(f"unknown name {val!r} at position {pos}")
        if kind == "op" and val == "(":
            fn, const = self.expr()
            self.expect_op(")")
            return fn, const
        raise ExpressionError(f"unexpected token at position {pos} in {self.text!r}")


def parse_expression(text: str) -> Expression:
    """Compile ``text`` into an Expression of the variable s."""
    if not text or not text.strip():
        raise ExpressionError("empty expression")
    parser = _Parser(text)
    fn, const = parser.expr()
    kind, _, pos = parser.peek()
    if kind != "end":
        raise ExpressionError(f"trailing input at position {pos} in {text!r}")
    return Expression(text.strip(), fn, const)
