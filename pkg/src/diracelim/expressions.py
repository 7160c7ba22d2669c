"""Parser and evaluators for the closed-form field expressions in scenario files.

The grammar covers what analytic potentials and seed components need and
nothing more: decimal literals, the imaginary unit ``i``, the constant ``pi``,
the variables ``t x y z``, unary minus, ``exp log sin cos``, the binary
operations ``+ - * /`` and ``^`` with an integer literal exponent.  Precedence
is the usual one (``^`` above unary minus above ``* /`` above ``+ -``), with
left association for the binary operators.

Every expression evaluates two ways: to a complex number at a point, and to a
truncated Taylor jet expanded at a point.  Both walks share the same tree, so
a scenario means the same thing to the jet pipeline and to the
finite-difference oracle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import jets
from .errors import ExpressionError, SingularityError
from .jets import Jet

_VARIABLES = {"t": 0, "x": 1, "y": 2, "z": 3}
_FUNCTIONS = ("exp", "log", "sin", "cos")


# -- syntax tree --------------------------------------------------------


@dataclass(frozen=True)
class Literal:
    value: float


@dataclass(frozen=True)
class ImaginaryUnit:
    pass


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str  # neg, exp, log, sin, cos
    arg: object


@dataclass(frozen=True)
class Binary:
    op: str  # + - * /
    lhs: object
    rhs: object


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int


# -- tokenizer ----------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # num, ident, op, end
    text: str
    pos: int


def _tokenize(text):
    out = []
    k = 0
    n = len(text)
    while k < n:
        c = text[k]
        if c.isspace():
            k += 1
            continue
        if c.isdigit() or (c == "." and k + 1 < n and text[k + 1].isdigit()):
            start = k
            while k < n and (text[k].isdigit() or text[k] == "."):
                k += 1
            if k < n and text[k] in "eE":
                j = k + 1
                if j < n and text[j] in "+-":
                    j += 1
                if j < n and text[j].isdigit():
                    k = j
                    while k < n and text[k].isdigit():
                        k += 1
            out.append(_Token("num", text[start:k], start))
            continue
        if c.isalpha() or c == "_":
            start = k
            while k < n and (text[k].isalnum() or text[k] == "_"):
                k += 1
            out.append(_Token("ident", text[start:k], start))
            continue
        if c in "+-*/^()":
            out.append(_Token("op", c, k))
            k += 1
            continue
        raise ExpressionError(f"unexpected character {c!r}", k)
    out.append(_Token("end", "", n))
    return out


# -- parser -------------------------------------------------------------


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, ch):
        tok = self.peek()
        if tok.kind != "op" or tok.text != ch:
            raise ExpressionError(f"expected {ch!r}", tok.pos)
        return self.advance()

    def parse(self):
        node = self.sum()
        tok = self.peek()
        if tok.kind != "end":
            raise ExpressionError(f"unexpected trailing input {tok.text!r}", tok.pos)
        return node

    def sum(self):
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            node = Binary(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance().text
            node = Binary(op, node, self.unary())
        return node

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            return Unary("neg", self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.advance()
            return Power(base, self.exponent())
        return base

    def exponent(self):
        sign = 1
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            sign = -1
            tok = self.peek()
        if tok.kind != "num":
            raise ExpressionError("expected an integer exponent after '^'", tok.pos)
        if not tok.text.isdigit():
            raise ExpressionError(
                f"exponent must be an integer literal, got {tok.text!r}", tok.pos
            )
        self.advance()
        return sign * int(tok.text)

    def atom(self):
        tok = self.advance()
        if tok.kind == "num":
            try:
                return Literal(float(tok.text))
            except ValueError:
                raise ExpressionError(f"bad numeric literal {tok.text!r}", tok.pos) from None
        if tok.kind == "ident":
            name = tok.text
            if name == "i":
                return ImaginaryUnit()
            if name == "pi":
                return Literal(math.pi)
            if name in _VARIABLES:
                return Variable(name)
            if name in _FUNCTIONS:
                self.expect_op("(")
                arg = self.sum()
                self.expect_op(")")
                return Unary(name, arg)
            raise ExpressionError(f"unknown identifier {name!r}", tok.pos)
        if tok.kind == "op" and tok.text == "(":
            node = self.sum()
            self.expect_op(")")
            return node
        if tok.kind == "end":
            raise ExpressionError("unexpected end of expression", tok.pos)
        raise ExpressionError(f"unexpected token {tok.text!r}", tok.pos)


def parse(text):
    """Parse expression text into a syntax tree."""
    return _Parser(text).parse()


# -- pretty printer -----------------------------------------------------

# Precedence levels used to decide parenthesization; a child is wrapped
# whenever its level is below what its position requires, so printing and
# reparsing reproduce the tree exactly.
_LEVEL_SUM = 0
_LEVEL_TERM = 1
_LEVEL_UNARY = 2
_LEVEL_POWER = 3
_LEVEL_ATOM = 4


def _level(node):
    if isinstance(node, Binary):
        return _LEVEL_SUM if node.op in "+-" else _LEVEL_TERM
    if isinstance(node, Unary):
        return _LEVEL_UNARY if node.op == "neg" else _LEVEL_ATOM
    if isinstance(node, Power):
        return _LEVEL_POWER
    return _LEVEL_ATOM


def _render(node, minimum):
    if isinstance(node, Literal):
        if node.value < 0:
            return _render(Unary("neg", Literal(-node.value)), minimum)
        text = repr(node.value)
        return text[:-2] if text.endswith(".0") else text
    if isinstance(node, ImaginaryUnit):
        return "i"
    if isinstance(node, Variable):
        return node.name
    if isinstance(node, Unary):
        if node.op == "neg":
            body = "-" + _render(node.arg, _LEVEL_UNARY)
        else:
            body = f"{node.op}({_render(node.arg, _LEVEL_SUM)})"
            return body
    elif isinstance(node, Binary):
        lhs = _render(node.lhs, _level(node))
        rhs = _render(node.rhs, _level(node) + 1)
        sep = f" {node.op} " if node.op in "+-" else node.op
        body = f"{lhs}{sep}{rhs}"
    elif isinstance(node, Power):
        body = f"{_render(node.base, _LEVEL_ATOM)}^{node.exponent}"
    else:
        raise TypeError(f"not an expression node: {node!r}")
    if _level(node) < minimum:
        return f"({body})"
    return body


def to_text(node):
    """Render a tree back to text; parse(to_text(e)) reproduces e."""
    return _render(node, _LEVEL_SUM)


# -- evaluation ---------------------------------------------------------


def eval_point(node, point):
    """Evaluate at a spacetime point (t, x, y, z), returning a complex number."""
    if isinstance(node, Literal):
        return complex(node.value)
    if isinstance(node, ImaginaryUnit):
        return 1j
    if isinstance(node, Variable):
        return complex(point[_VARIABLES[node.name]])
    if isinstance(node, Unary):
        v = eval_point(node.arg, point)
        if node.op == "neg":
            return -v
        if node.op == "log" and v == 0:
            raise SingularityError("log of zero in expression evaluation")
        return getattr(cmath, node.op)(v)
    if isinstance(node, Binary):
        a = eval_point(node.lhs, point)
        b = eval_point(node.rhs, point)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if b == 0:
            raise SingularityError("division by zero in expression evaluation")
        return a / b
    if isinstance(node, Power):
        base = eval_point(node.base, point)
        if node.exponent < 0 and base == 0:
            raise SingularityError("zero raised to a negative power")
        return base**node.exponent
    raise TypeError(f"not an expression node: {node!r}")


def eval_jet(node, point, order):
    """Evaluate to a Taylor jet of the given order expanded at `point`."""
    if isinstance(node, Literal):
        return Jet.constant(node.value, order)
    if isinstance(node, ImaginaryUnit):
        return Jet.constant(1j, order)
    if isinstance(node, Variable):
        axis = _VARIABLES[node.name]
        return Jet.coordinate(axis, point[axis], order)
    if isinstance(node, Unary):
        g = eval_jet(node.arg, point, order)
        if node.op == "neg":
            return -g
        return getattr(jets, node.op)(g)
    if isinstance(node, Binary):
        a = eval_jet(node.lhs, point, order)
        b = eval_jet(node.rhs, point, order)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        return a / b
    if isinstance(node, Power):
        base = eval_jet(node.base, point, order)
        return base**node.exponent
    raise TypeError(f"not an expression node: {node!r}")
