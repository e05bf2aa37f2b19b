"""Text parser for polynomials and differential operators.

Polynomials use ``+ - * / ^`` and parentheses over identifiers and integer
or rational literals; ``/`` only divides by a nonzero constant.  In operator
text a token ``d<var>`` stands for the partial derivative in ``<var>``, and
products are read as operator composition, so ``3*X*dY^2`` is ``3X d_Y^2``
and ``dX*X`` is ``X dX + 1``.  A declared variable always wins over a
``d``-token of the same spelling.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polycore import Polynomial, UnknownVariable
from .weyl import DiffOperator

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class UnknownVariableError(ParseError):
    def __init__(self, name: str, text: str, position: int, variables: Sequence[str]):
        self.name = name
        self.variables = tuple(variables)
        super().__init__(
            f"unknown variable {name!r} (context: {', '.join(variables) or 'empty'})", text, position
        )


@dataclass
class _Tok:
    kind: str  # num, ident, op, end
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("num", m.group(1), start))
        elif m.group(2):
            toks.append(_Tok("ident", m.group(2), start))
        else:
            op = m.group(3)
            toks.append(_Tok("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, variables: Sequence[str], operator_mode: bool):
        self.text = text
        self.vars = tuple(variables)
        self.op_mode = operator_mode
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.tok
        return ParseError(msg, self.text, tok.pos)

    def parse(self):
        if self.tok.kind == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected token {self.tok.value!r}")
        return value

    def expr(self):
        value = self.term()
        while self.tok.kind == "op" and self.tok.value in "+-":
            op = self.take().value
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.tok.kind == "op" and self.tok.value in "*/":
            op_tok = self.take()
            rhs = self.unary()
            if op_tok.value == "*":
                value = self.mul(value, rhs)
            else:
                c = self.as_constant(rhs)
                if c is None:
                    raise self.error("division only by a constant", op_tok)
                if c == 0:
                    raise self.error("division by zero", op_tok)
                value = value * (1 / c)
        return value

    def unary(self):
        if self.tok.kind == "op" and self.tok.value in "+-":
            op = self.take().value
            value = self.unary()
            return -value if op == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.kind == "op" and self.tok.value == "^":
            self.take()
            neg = False
            if self.tok.kind == "op" and self.tok.value == "-":
                neg = True
                self.take()
            t = self.tok
            if t.kind != "num":
                raise self.error("exponent must be a non-negative integer literal")
            if neg:
                raise self.error("negative exponent", t)
            self.take()
            return base ** int(t.value)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.take()
            return self.lift(Polynomial.constant(self.vars, int(t.value)))
        if t.kind == "ident":
            self.take()
            name = t.value
            if name in self.vars:
                return self.lift(Polynomial.variable(self.vars, name))
            if self.op_mode and name.startswith("d") and name[1:] in self.vars:
                return DiffOperator.partial(self.vars, name[1:])
            raise UnknownVariableError(name, self.text, t.pos, self.vars)
        if t.kind == "op" and t.value == "(":
            self.take()
            value = self.expr()
            if not (self.tok.kind == "op" and self.tok.value == ")"):
                raise self.error("expected ')'")
            self.take()
            return value
        if t.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected token {t.value!r}")

    def lift(self, p: Polynomial):
        return DiffOperator.multiplication(p) if self.op_mode else p

    def mul(self, a, b):
        if self.op_mode:
            return a.compose(b)
        return a * b

    def as_constant(self, v) -> Fraction | None:
        if isinstance(v, DiffOperator):
            if v.is_zero():
                return Fraction(0)
            if set(v.terms) != {(0,) * len(self.vars)}:
                return None
            v = v.coefficient((0,) * len(self.vars))
        return v.constant_value() if v.is_constant() else None


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse polynomial text over an explicit variable context."""
    return _Parser(text, variables, operator_mode=False).parse()


def parse_operator(text: str, variables: Sequence[str]) -> DiffOperator:
    """Parse operator text such as ``"dX^4 + dY^4"`` or ``"3*Y^2*dX + 2*X*dY"``."""
    return _Parser(text, variables, operator_mode=True).parse()


def infer_variables(text: str, operator: bool = False) -> tuple[str, ...]:
    """Guess a variable context from text, sorted by name.

    In operator text an identifier ``dZ`` with a nonempty tail counts as a
    derivative in ``Z``.
    """
    names = set()
    for t in _tokenize(text):
        if t.kind != "ident":
            continue
        if operator and t.value.startswith("d") and len(t.value) > 1:
            names.add(t.value[1:])
        else:
            names.add(t.value)
    return tuple(sorted(names))


__all__ = [
    "ParseError",
    "UnknownVariable",
    "UnknownVariableError",
    "infer_variables",
    "parse_operator",
    "parse_polynomial",
]
