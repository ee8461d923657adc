"""Recursive-descent parser for polynomial text over Q(i).

Grammar (whitespace and newlines are ignored between tokens)::

    expr    := [+|-] term ((+|-) term)* [;]
    term    := factor ((*|/) factor)*
    factor  := (+|-) factor | atom [^ INTEGER]
    atom    := INTEGER | NAME | "(" expr ")"

``NAME`` is one of the declared variables or ``i`` (the imaginary unit).
Division is only allowed by nonzero constants.  This accepts the curve
listings as written, e.g. ``12*x^7+(8*i+420)*x^6*y+...``, and everything
:meth:`MultiPoly.to_text` prints.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from surfcover.algebra.exactfield import I, GaussianRational
from surfcover.algebra.poly import MultiPoly
from surfcover.errors import DivisionByZero, ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")
_ASSIGNMENT = re.compile(r"^\s*[A-Za-z_][A-Za-z_0-9]*\s*:=", re.S)


@dataclass(frozen=True)
class _Token:
    kind: str  # "int" | "name" | "op" | "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group(1) is not None:
            tokens.append(_Token("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(_Token("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^();":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), "an operator, number or name")
            tokens.append(_Token("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(_Token("end", "", len(text.rstrip())))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]) -> None:
        self.variables = tuple(variables)
        self.tokens = _tokenize(text)
        self.k = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.k]

    def advance(self) -> _Token:
        t = self.tokens[self.k]
        self.k += 1
        return t

    def at_op(self, chars: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in chars

    # ── grammar ─────────────────────────────────────────────────────────────

    def parse(self) -> MultiPoly:
        if self.tok.kind == "end":
            raise ParseError("empty expression", self.tok.pos, "a term")
        result = self.expr()
        if self.at_op(";"):
            self.advance()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos, "'+', '-' or end of input")
        return result

    def expr(self) -> MultiPoly:
        negate = False
        if self.at_op("+-"):
            negate = self.advance().text == "-"
        acc = self.term()
        if negate:
            acc = -acc
        while self.at_op("+-"):
            op = self.advance().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while self.at_op("*/"):
            op = self.advance()
            rhs = self.factor()
            if op.text == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant():
                    raise ParseError("division by a non-constant", op.pos, "a constant divisor")
                c = rhs.constant_term()
                if not c:
                    raise DivisionByZero(f"division by zero at position {op.pos}")
                acc = acc / c
        return acc

    def factor(self) -> MultiPoly:
        if self.at_op("+-"):
            sign = self.advance().text
            inner = self.factor()
            return -inner if sign == "-" else inner
        base = self.atom()
        if self.at_op("^"):
            self.advance()
            t = self.tok
            if t.kind != "int":
                raise ParseError(f"bad exponent {t.text!r}", t.pos, "a nonnegative integer exponent")
            self.advance()
            base = base ** int(t.text)
        return base

    def atom(self) -> MultiPoly:
        t = self.tok
        if t.kind == "int":
            self.advance()
            return MultiPoly.constant(int(t.text), self.variables)
        if t.kind == "name":
            self.advance()
            if t.text == "i":
                return MultiPoly.constant(I, self.variables)
            if t.text in self.variables:
                return MultiPoly.var(t.text, self.variables)
            expected = ", ".join(self.variables + ("i",))
            raise ParseError(f"unknown name {t.text!r}", t.pos, f"one of {expected}")
        if self.at_op("("):
            self.advance()
            inner = self.expr()
            if not self.at_op(")"):
                raise ParseError(f"unexpected {self.tok.text or 'end of input'!r}", self.tok.pos, "')'")
            self.advance()
            return inner
        what = t.text if t.kind != "end" else "end of input"
        raise ParseError(f"unexpected {what!r}", t.pos, "a number, a name or '('")


# ═══════════════════════════════════════════════════════════════════════════
# Public entry points
# ═══════════════════════════════════════════════════════════════════════════

def parse_poly(text: str, variables: Sequence[str] = ("x", "y", "z")) -> MultiPoly:
    """Parse polynomial text into a ``MultiPoly`` over ``variables``."""
    return _Parser(text, variables).parse()


def parse_scalar(text: str) -> GaussianRational:
    """Parse a constant such as ``"3"``, ``"2*i"`` or ``"-1/2+3/4*i"``."""
    p = _Parser(text, ()).parse()
    return p.constant_term()


def strip_assignment(text: str) -> str:
    """Drop a leading ``NAME:=`` so listings like ``F6:=...;`` parse as-is."""
    m = _ASSIGNMENT.match(text)
    return text[m.end():] if m else text


def format_poly(F: MultiPoly, order: str = "grlex") -> str:
    return F.to_text(order)
