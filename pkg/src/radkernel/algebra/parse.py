"""Recursive-descent parser for element expressions.

Grammar (whitespace-insensitive)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    coeff  := integer ['/' positive-integer]
    factor := ident ['^' positive-integer] | 'E(' ['-'] integer ['/' positive-integer] ')'
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import FieldMismatch, ParseError, UnknownVariable
from .core import Element

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S)")


def _tokenize(text: str):
    tokens = []
    for m in _TOKEN.finditer(text):
        kind = ("num", "id", "op")[m.lastindex - 1]
        tokens.append((kind, m.group(), m.start()))
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, algebra, text: str):
        self.algebra = algebra
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect(self, value: str):
        tok = self.take()
        if tok[1] != value or tok[0] != "op":
            self.error(f"expected {value!r}", tok)
        return tok

    def expr(self) -> Element:
        sign = 1
        if self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        total = self.term().scale(sign)
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
            total = total + self.term().scale(sign)
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return total

    def positive_int(self) -> int:
        tok = self.take()
        if tok[0] != "num" or int(tok[1]) == 0:
            self.error("expected a positive integer", tok)
        return int(tok[1])

    def rational(self) -> Fraction:
        neg = False
        if self.peek()[:2] == ("op", "-"):
            self.take()
            neg = True
        tok = self.take()
        if tok[0] != "num":
            self.error("expected an integer", tok)
        value = Fraction(int(tok[1]))
        if self.peek()[:2] == ("op", "/"):
            self.take()
            value /= self.positive_int()
        return -value if neg else value

    def scalar(self, value: Fraction, tok):
        try:
            return self.algebra.field(value)
        except ZeroDivisionError:
            raise FieldMismatch(f"{value} at position {tok[2]} has no image in {self.algebra.field!r}") from None

    def term(self) -> Element:
        tok = self.peek()
        if tok[0] == "num":
            acc = self.algebra.scalar(self.scalar(self.rational(), tok))
        elif tok[0] == "id":
            acc = self.factor()
        else:
            self.error("expected a coefficient or a factor")
        while self.peek()[:2] == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Element:
        tok = self.take()
        if tok[0] != "id":
            self.error("expected a variable", tok)
        name = tok[1]
        if name == "E" and self.peek()[:2] == ("op", "(") and hasattr(self.algebra, "exp"):
            self.take()
            lam = self.rational()
            self.expect(")")
            base = self.algebra.exp(lam)
        else:
            try:
                base = self.algebra.gen(name)
            except UnknownVariable:
                raise UnknownVariable(f"{name!r} at position {tok[2]}") from None
        if self.peek()[:2] == ("op", "^"):
            self.take()
            base = base ** self.positive_int()
        return base


def parse_element(algebra, text: str) -> Element:
    if not text.strip():
        raise ParseError("empty expression", 0, text)
    return _Parser(algebra, text).expr()
