"""Parsers for the text formats of polynomials, exponential-polynomials and functionals.

Polynomials are arithmetic expressions over the variables ``z1..zn``,
rational literals ``a/b``, imaginary literals ``c/di`` (or bare ``i``),
``+ - * ^`` and parentheses, so the canonical printed form
``(1/1)*z1^2 + (1/1)*z2^2 + (-1/1)`` parses back to the same value.
"""

from __future__ import annotations

import re
from typing import Optional

from gmpy2 import mpq

from .gaussian import GaussianRational

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?i?)|(?P<var>z\d+)|(?P<imag>i)|(?P<op>[-+*^()])|(?P<bad>\S))")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}: {text!r}")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        kind = m.lastgroup
        start = m.start(kind)
        value = m.group(kind)
        if kind == "bad":
            raise ParseError(f"unexpected character {value!r}", text, start)
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _PolyParser:
    # expr := ['+'|'-'] term (('+'|'-') term)*
    # term := factor ('*' factor)*  ; juxtaposition is not allowed
    # factor := atom ('^' integer)?
    def __init__(self, text: str, nvars: Optional[int]):
        from .polycore import Polynomial
        self.P = Polynomial
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        if nvars is None:
            found = [int(v[1:]) for k, v, _ in self.tokens if k == "var"]
            nvars = max(found, default=1)
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", self.text, pos)

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty polynomial", self.text, 0)
        result = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {v!r}", self.text, pos)
        return result

    def expr(self):
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, v, pos = self.take()
            if kind != "num" or "/" in v or v.endswith("i"):
                raise ParseError("exponent must be a non-negative integer", self.text, pos)
            base = base ** int(v)
        return base

    def atom(self):
        kind, v, pos = self.take()
        if kind == "num":
            imag = v.endswith("i")
            body = v[:-1] if imag else v
            if "/" in body:
                num, den = body.split("/")
                if int(den) == 0:
                    raise ParseError("zero denominator in rational literal", self.text, pos)
                q = mpq(int(num), int(den))
            else:
                q = mpq(int(body))
            c = GaussianRational(0, q) if imag else GaussianRational(q)
            return self.P.constant(c, self.nvars)
        if kind == "imag":
            return self.P.constant(GaussianRational(0, 1), self.nvars)
        if kind == "var":
            idx = int(v[1:])
            if not 1 <= idx <= self.nvars:
                raise ParseError(f"unknown variable {v!r} (nvars={self.nvars})", self.text, pos)
            return self.P.variable(idx - 1, self.nvars)
        if kind == "op" and v == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {v or 'end of input'!r}", self.text, pos)


def parse_polynomial(text: str, nvars: Optional[int] = None):
    """Parse a polynomial; ``nvars`` defaults to the largest variable index used."""
    return _PolyParser(text, nvars).parse()


def parse_scalar(text: str) -> GaussianRational:
    p = parse_polynomial(text, 1)
    if not p.is_constant:
        raise ParseError("expected a constant", text, 0)
    return p.constant_value()


def _split_top_level(text: str, sep: str, offset: int = 0):
    parts, depth, start = [], 0, 0
    for k, ch in enumerate(text):
        if ch in "([<":
            depth += 1
        elif ch in ")]>":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append((text[start:k], offset + start))
            start = k + 1
    parts.append((text[start:], offset + start))
    return parts


def _parse_point(text: str, offset: int, full: str):
    coords = []
    for piece, pos in _split_top_level(text, ",", offset):
        if not piece.strip():
            raise ParseError("empty coordinate", full, pos)
        try:
            coords.append(parse_scalar(piece))
        except ParseError as exc:
            raise ParseError(f"bad coordinate: {exc.message}", full, pos + exc.pos) from None
    return coords


_EXP_TERM = re.compile(r"\s*\[(?P<q>[^\]]*)\]\s*\*\s*exp\(\s*<(?P<w>[^>]*)>\s*\)\s*")
_FUN_TERM = re.compile(r"\s*\[(?P<q>[^\]]*)\]\s*@\s*\((?P<w>.*)\)\s*$", re.S)


def _terms(text: str):
    # terms are joined by '+' outside brackets
    return [(s, pos) for s, pos in _split_top_level(text, "+") if s.strip()]


def parse_exppoly(text: str, nvars: Optional[int] = None):
    """Parse ``[Q] * exp(<w1,...,wn>) + ...``; ``0`` is the zero function."""
    from .expcalc import ExpPoly
    if text.strip() == "0":
        return ExpPoly(nvars or 1, [])
    raw = []
    for piece, pos in _terms(text):
        m = _EXP_TERM.fullmatch(piece)
        if m is None:
            raise ParseError("expected '[Q] * exp(<w>)'", text, pos)
        w = _parse_point(m.group("w"), pos + m.start("w"), text)
        raw.append((m.group("q"), pos + m.start("q"), w))
    n = nvars or max(len(w) for _, _, w in raw)
    terms = []
    for qtext, qpos, w in raw:
        if len(w) != n:
            raise ParseError(f"frequency has {len(w)} coordinates, expected {n}", text, qpos)
        try:
            q = parse_polynomial(qtext, n)
        except ParseError as exc:
            raise ParseError(exc.message, text, qpos + exc.pos) from None
        terms.append((q, w))
    return ExpPoly(n, terms)


def parse_functional(text: str, nvars: Optional[int] = None):
    """Parse ``[Q] @ (w1,...,wn) + ...``; ``0`` is the zero functional."""
    from .functionals import ExpFunctional
    if text.strip() == "0":
        return ExpFunctional(nvars or 1, [])
    raw = []
    for piece, pos in _terms(text):
        m = _FUN_TERM.fullmatch(piece)
        if m is None:
            raise ParseError("expected '[Q] @ (w)'", text, pos)
        w = _parse_point(m.group("w"), pos + m.start("w"), text)
        raw.append((m.group("q"), pos + m.start("q"), w))
    n = nvars or max(len(w) for _, _, w in raw)
    terms = []
    for qtext, qpos, w in raw:
        if len(w) != n:
            raise ParseError(f"support point has {len(w)} coordinates, expected {n}", text, qpos)
        try:
            q = parse_polynomial(qtext, n)
        except ParseError as exc:
            raise ParseError(exc.message, text, qpos + exc.pos) from None
        terms.append((q, w))
    return ExpFunctional(n, terms)


def format_point(w) -> str:
    from .gaussian import format_gaussian
    return ",".join(format_gaussian(GaussianRational.coerce(x)) for x in w)
