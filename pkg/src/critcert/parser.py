"""Recursive-descent parser for polynomial expressions with rational coefficients.

Grammar (whitespace ignored)::

    poly     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := '-' factor | base ('^' uint)?
    base     := var | rational | '(' poly ')'
    rational := uint ('/' uint)?

Unary minus applies to a whole factor, so ``-x^2`` is ``-(x^2)``.  Implicit
multiplication is rejected.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .ring import Poly

__all__ = ["ParseError", "parse_polynomial", "parse_rational", "parse_point", "infer_variables"]

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        super().__init__(message if position is None else f"{message} at position {position}")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = tuple(variables)
        self.index = {v: k for k, v in enumerate(self.vars)}

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, v, pos = self.take()
        if v != value or kind != "op":
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def parse(self) -> Poly:
        p = self.poly()
        kind, v, pos = self.peek()
        if kind != "end":
            if kind in ("num", "name") or v == "(":
                raise ParseError("implicit multiplication is not allowed; use '*'", pos)
            raise ParseError(f"unexpected {v!r}", pos)
        return p

    def poly(self) -> Poly:
        acc = self.term()
        while True:
            kind, v, _ = self.peek()
            if kind == "op" and v in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if v == "+" else acc - rhs
            else:
                return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        kind, v, _ = self.peek()
        if kind == "op" and v == "-":
            self.take()
            return -self.factor()
        b = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, v, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer", pos)
            b = b ** int(v)
        return b

    def base(self) -> Poly:
        kind, v, pos = self.take()
        if kind == "name":
            if v not in self.index:
                raise ParseError(f"undeclared variable {v!r}", pos)
            return Poly.var(self.vars, self.index[v])
        if kind == "num":
            num = int(v)
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                k2, d, p2 = self.take()
                if k2 != "num":
                    raise ParseError("denominator must be a nonnegative integer", p2)
                if int(d) == 0:
                    raise ParseError("zero denominator", p2)
                return Poly.constant(self.vars, Fraction(num, int(d)))
            return Poly.constant(self.vars, num)
        if kind == "op" and v == "(":
            p = self.poly()
            self.expect(")")
            return p
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos)


def parse_polynomial(text: str, variables: Sequence[str]) -> Poly:
    """Parse ``text`` into a Poly over ``variables``."""
    if not variables:
        raise ParseError("at least one variable must be declared")
    if len(set(variables)) != len(variables):
        raise ParseError("duplicate variable names")
    return _Parser(text, variables).parse()


def infer_variables(text: str) -> list[str]:
    """Identifiers in ``text``, sorted with numeric suffixes compared as numbers."""
    names = {m.group("name") for m in _TOKEN.finditer(text) if m.group("name")}

    def key(name: str):
        m = re.match(r"(.*?)(\d*)$", name)
        return (m.group(1), int(m.group(2)) if m.group(2) else -1)

    return sorted(names, key=key)


def parse_rational(text: str) -> Fraction:
    """A signed rational such as ``-3/4``, ``7`` or ``0.25``."""
    s = text.strip()
    try:
        if re.fullmatch(r"[+-]?\d+(/\d+)?|[+-]?\d*\.\d+(e[+-]?\d+)?", s, re.I) is None:
            raise ValueError
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None


def parse_point(text: str, n: int) -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",")]
    if len(parts) != n:
        raise ParseError(f"point has {len(parts)} coordinates, expected {n}")
    return tuple(parse_rational(p) for p in parts)
