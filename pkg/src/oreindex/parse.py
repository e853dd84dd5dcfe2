"""Parser for integer polynomials in one variable.

Grammar (EBNF, whitespace ignored)::

    poly    = term , { ( "+" | "-" ) , term } ;
    term    = signed , { [ "*" ] , power } ;
    signed  = { "+" | "-" } , power ;
    power   = atom , [ ( "^" | "**" ) , digits ] ;
    atom    = digits | letter | "(" , poly , ")" ;

The minus sign may also be written as U+2212.  Juxtaposition multiplies
(``3x^2``, ``2(x+1)``).  At most one variable letter may appear.
"""

from __future__ import annotations

import re

from .zx import IntPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(\*\*|[-+*^()]))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    text = text.replace("−", "-")
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r} at offset {pos}")
        num, var, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", num, start))
        elif var is not None:
            out.append(("var", var, start))
        else:
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.var: str | None = None

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, value: str | None = None):
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r} at offset {tok[2]}, found {tok[1]!r}")
        self.i += 1
        return tok

    def poly(self) -> IntPoly:
        acc = self.term()
        while (tok := self.peek()) and tok[1] in "+-" and tok[0] == "op":
            self.take()
            rhs = self.term()
            acc = acc + rhs if tok[1] == "+" else acc - rhs
        return acc

    def term(self) -> IntPoly:
        acc = self.signed()
        while (tok := self.peek()) is not None:
            if tok == ("op", "*", tok[2]):
                self.take()
            elif not (tok[0] in ("num", "var") or tok[1] == "("):
                break
            acc = acc * self.power()
        return acc

    def signed(self) -> IntPoly:
        sign = 1
        while (tok := self.peek()) and tok[0] == "op" and tok[1] in "+-":
            self.take()
            if tok[1] == "-":
                sign = -sign
        return self.power() * sign

    def power(self) -> IntPoly:
        base = self.atom()
        tok = self.peek()
        if tok and tok[1] == "^":
            self.take()
            exp = self.take()
            if exp[0] != "num":
                raise ParseError(f"exponent must be a non-negative integer at offset {exp[2]}")
            return base ** int(exp[1])
        return base

    def atom(self) -> IntPoly:
        kind, value, pos = self.take()
        if kind == "num":
            return IntPoly((int(value),))
        if kind == "var":
            if self.var is None:
                self.var = value
            elif value != self.var:
                raise ParseError(f"second variable {value!r} at offset {pos}")
            return IntPoly.x()
        if value == "(":
            inner = self.poly()
            self.take(")")
            return inner
        raise ParseError(f"unexpected {value!r} at offset {pos}")


def parse_poly(text: str) -> IntPoly:
    """Parse text such as ``"x^5 + 3x^2 - 144"`` into an IntPoly."""
    p = _Parser(text)
    if not p.tokens:
        raise ParseError("empty polynomial")
    result = p.poly()
    if p.peek() is not None:
        tok = p.peek()
        raise ParseError(f"unexpected {tok[1]!r} at offset {tok[2]}")
    return result
