"""Polynomial input: coefficient lists or one-variable expressions."""

from __future__ import annotations

import re
from fractions import Fraction

from .exactpoly import Poly


class ParseError(ValueError):
    def __init__(self, message: str, column: int | None = None):
        self.column = column
        where = f" at column {column}" if column is not None else ""
        super().__init__(f"{message}{where}")


_LITERAL = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)(/\d+)?$")
_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def _literal(text: str, column: int) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ParseError("division by zero in literal", column)
    return Fraction(num) / (Fraction(den) if den else 1)


def _coefficient_list(text: str) -> list[str] | None:
    parts = [s for s in re.split(r"[,\s]+", text.strip()) if s]
    if "," not in text and len(parts) < 2:
        return None
    return parts if all(_LITERAL.match(s) for s in parts) else None


def parse_polynomial(text: str) -> Poly:
    """Parse ``"a_n, ..., a_0"`` or an expression such as ``"3x^3 - 4x + 1"``.

    Columns in error messages are 1-based.
    """
    if not text or not text.strip():
        raise ParseError("empty input")
    parts = _coefficient_list(text)
    if parts is not None:
        coeffs = [_literal(s, text.find(s) + 1) for s in parts]
        p = Poly(reversed(coeffs))
    else:
        p = _ExprParser(text).parse()
    if not p:
        raise ParseError("zero polynomial")
    return p


class _ExprParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []  # (kind, value, column)
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                if text[pos:].strip() == "":
                    break
                col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
                raise ParseError(f"unexpected character {text[col - 1]!r}", col)
            kind = "num" if m.group(1) else "var" if m.group(2) else "op"
            start = m.start(m.lastindex)
            self.tokens.append((kind, m.group(m.lastindex), start + 1))
            pos = m.end()
        self.i = 0
        self.var: str | None = None

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text) + 1)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, col = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}", col)

    def parse(self) -> Poly:
        p = self.expr()
        kind, v, col = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", col)
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[1] in ("+", "-"):
            _, op, _ = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while True:
            kind, v, col = self.peek()
            if v in ("*", "/"):
                self.take()
                q = self.unary()
                if v == "*":
                    p = p * q
                else:
                    if q.degree > 0:
                        raise ParseError("division by a non-constant", col)
                    if not q:
                        raise ParseError("division by zero", col)
                    p = p.scale(1 / q.lc)
            elif kind in ("num", "var") or v == "(":
                p = p * self.unary()  # implicit multiplication
            else:
                return p

    def unary(self) -> Poly:
        if self.peek()[1] in ("+", "-"):
            _, op, _ = self.take()
            p = self.unary()
            return -p if op == "-" else p
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            kind, v, col = self.take()
            if kind != "num" or not v.isdigit():
                raise ParseError("exponent must be a nonnegative integer", col)
            return base ** int(v)
        return base

    def atom(self) -> Poly:
        kind, v, col = self.take()
        if kind == "num":
            return Poly.const(Fraction(v))
        if kind == "var":
            if self.var is None:
                self.var = v
            elif v != self.var:
                raise ParseError(f"second variable {v!r} (already using {self.var!r})", col)
            return Poly.x()
        if v == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "end":
            raise ParseError("unexpected end of input", col)
        raise ParseError(f"unexpected {v!r}", col)
