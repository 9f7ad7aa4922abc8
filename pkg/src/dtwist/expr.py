"""Expressions in x and y: tokenizer, parser, printer and evaluators.

Grammar (``^`` is right-associative and binds tighter than unary minus)::

    expr   := term { ("+"|"-") term }
    term   := unary { ("*"|"/") unary }
    unary  := "-" unary | power
    power  := atom [ "^" unary ]
    atom   := NUMBER | "x" | "y" | "pi" | "e" | FUNC "(" expr ")" | "(" expr ")"

The same tree walker drives both scalar and 2-jet evaluation, so the value
lane of :func:`eval_jet2` is bit-identical to :func:`eval_scalar`.
"""

from __future__ import annotations

import math
import operator
import re
from dataclasses import dataclass, field
from typing import NamedTuple, Union

from ._grid import grid_points
from .errors import DomainError, ExprSyntaxError, UnknownIdentifierError
from .jets import Jet2

FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt", "sinh", "cosh", "tanh")
CONSTANTS = {"pi": math.pi, "e": math.e}
VARIABLES = ("x", "y")


# -- tokens -------------------------------------------------------------------

class Token(NamedTuple):
    kind: str  # number | ident | op | lparen | rparen
    lexeme: str
    position: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^])
  | (?P<lparen>\()
  | (?P<rparen>\))
    """,
    re.VERBOSE,
)


def tokenize(source: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {source[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    return tokens


# -- AST ----------------------------------------------------------------------
# Positions are carried for error reporting but excluded from equality, so
# structurally identical trees compare equal regardless of spacing.

@dataclass(frozen=True)
class Num:
    value: float
    name: str | None = field(default=None, compare=False)
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"
    pos: int = field(default=0, compare=False)


Node = Union[Num, Var, Neg, BinOp, Call]


class _Parser:
    _ATOM_START = frozenset({"number", "identifier", "'('"})

    def __init__(self, source):
        self.source = source
        self.tokens = tokenize(source)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def offset(self):
        tok = self.peek()
        return tok.position if tok is not None else len(self.source)

    def fail(self, expected):
        tok = self.peek()
        what = f"unexpected {tok.lexeme!r}" if tok else "unexpected end of input"
        raise ExprSyntaxError(what, self.offset(), expected)

    def accept_op(self, *ops):
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.lexeme in ops:
            self.i += 1
            return tok
        return None

    def parse(self):
        if not self.tokens:
            raise ExprSyntaxError("empty expression", 0, self._ATOM_START | {"'-'"})
        node = self.expr()
        if self.peek() is not None:
            self.fail({"operator", "end of input"})
        return node

    def expr(self):
        node = self.term()
        while (tok := self.accept_op("+", "-")) is not None:
            node = BinOp(tok.lexeme, node, self.term(), tok.position)
        return node

    def term(self):
        node = self.unary()
        while (tok := self.accept_op("*", "/")) is not None:
            node = BinOp(tok.lexeme, node, self.unary(), tok.position)
        return node

    def unary(self):
        tok = self.accept_op("-")
        if tok is not None:
            return Neg(self.unary(), tok.position)
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.accept_op("^")
        if tok is not None:
            return BinOp("^", base, self.unary(), tok.position)
        return base

    def atom(self):
        tok = self.peek()
        if tok is None or tok.kind not in ("number", "ident", "lparen"):
            self.fail(self._ATOM_START)
        self.i += 1
        if tok.kind == "number":
            value = float(tok.lexeme)
            if not math.isfinite(value):
                raise ExprSyntaxError(f"numeric literal {tok.lexeme!r} overflows", tok.position)
            return Num(value, pos=tok.position)
        if tok.kind == "lparen":
            node = self.expr()
            self.expect_rparen()
            return node
        name = tok.lexeme
        if name in VARIABLES:
            return Var(name, tok.position)
        if name in CONSTANTS:
            return Num(CONSTANTS[name], name, tok.position)
        if name in FUNCTIONS:
            nxt = self.peek()
            if nxt is None or nxt.kind != "lparen":
                self.fail({"'('"})
            self.i += 1
            arg = self.expr()
            self.expect_rparen()
            return Call(name, arg, tok.position)
        raise UnknownIdentifierError(name, tok.position)

    def expect_rparen(self):
        tok = self.peek()
        if tok is None or tok.kind != "rparen":
            self.fail({"')'", "operator"})
        self.i += 1


def to_source(node: Node) -> str:
    """Render a tree back to parseable text."""
    if isinstance(node, Num):
        return node.name if node.name else repr(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({to_source(node.arg)})"
    if isinstance(node, Neg):
        return "-" + _wrapped(node.operand)
    if isinstance(node, BinOp):
        sep = "^" if node.op == "^" else f" {node.op} "
        return _wrapped(node.left) + sep + _wrapped(node.right)
    raise TypeError(f"not an expression node: {node!r}")


def _wrapped(node):
    text = to_source(node)
    return f"({text})" if isinstance(node, (BinOp, Neg)) else text


# -- evaluation ---------------------------------------------------------------

class _FloatLane:
    @staticmethod
    def const(c):
        return c

    @staticmethod
    def var(name, x, y):
        return x if name == "x" else y

    @staticmethod
    def value(u):
        return u

    @staticmethod
    def ipow(u, n):
        return u ** n

    @staticmethod
    def call(name, u):
        return getattr(math, name)(u)


def _jet_call(name, u):
    t = u.v
    if name == "sin":
        s, c = math.sin(t), math.cos(t)
        return u.chain(s, c, -s)
    if name == "cos":
        s, c = math.sin(t), math.cos(t)
        return u.chain(c, -s, -c)
    if name == "tan":
        r = math.tan(t)
        sec2 = 1.0 + r * r
        return u.chain(r, sec2, 2.0 * r * sec2)
    if name == "exp":
        r = math.exp(t)
        return u.chain(r, r, r)
    if name == "log":
        return u.chain(math.log(t), 1.0 / t, -1.0 / (t * t))
    if name == "sqrt":
        r = math.sqrt(t)
        return u.chain(r, 0.5 / r, -0.25 / (r * t))
    if name == "sinh":
        s, c = math.sinh(t), math.cosh(t)
        return u.chain(s, c, s)
    if name == "cosh":
        s, c = math.sinh(t), math.cosh(t)
        return u.chain(c, s, c)
    if name == "tanh":
        r = math.tanh(t)
        sech2 = 1.0 - r * r
        return u.chain(r, sech2, -2.0 * r * sech2)
    raise ValueError(name)


class _JetLane:
    @staticmethod
    def const(c):
        return Jet2(c)

    @staticmethod
    def var(name, x, y):
        return Jet2.var_x(x) if name == "x" else Jet2.var_y(y)

    @staticmethod
    def value(u):
        return u.v

    @staticmethod
    def ipow(u, n):
        t = u.v
        f0 = t ** n
        f1 = n * t ** (n - 1) if n != 0 else 0.0
        f2 = n * (n - 1) * t ** (n - 2) if n * (n - 1) != 0 else 0.0
        return u.chain(f0, f1, f2)

    call = staticmethod(_jet_call)


_BINARY = {
    "+": operator.add,
    "-": operator.sub,
    "*": operator.mul,
    "/": operator.truediv,
    "^": operator.pow,
}


def _constant_exponent(node):
    """Value of a variable-free subtree, else None."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return None
    try:
        if isinstance(node, Neg):
            v = _constant_exponent(node.operand)
            return None if v is None else -v
        if isinstance(node, Call):
            v = _constant_exponent(node.arg)
            return None if v is None else getattr(math, node.func)(v)
        if isinstance(node, BinOp):
            a = _constant_exponent(node.left)
            b = _constant_exponent(node.right)
            if a is None or b is None:
                return None
            return _BINARY[node.op](a, b)
    except (ArithmeticError, ValueError, TypeError):
        return None
    return None


def _integer_exponent(node):
    c = _constant_exponent(node)
    if isinstance(c, float) and math.isfinite(c) and c.is_integer() and abs(c) < 2 ** 31:
        return int(c)
    return None


def _walk(node, x, y, lane):
    try:
        out = _walk_inner(node, x, y, lane)
    except (OverflowError, ZeroDivisionError) as exc:
        raise DomainError(f"arithmetic failure ({exc})", node.pos) from None
    if not math.isfinite(lane.value(out)):
        raise DomainError("non-finite intermediate value", node.pos)
    return out


def _walk_inner(node, x, y, lane):
    if isinstance(node, Num):
        return lane.const(node.value)
    if isinstance(node, Var):
        return lane.var(node.name, x, y)
    if isinstance(node, Neg):
        return -_walk(node.operand, x, y, lane)
    if isinstance(node, Call):
        u = _walk(node.arg, x, y, lane)
        t = lane.value(u)
        if node.func == "log" and t <= 0.0:
            raise DomainError(f"log of nonpositive value {t!r}", node.pos)
        if node.func == "sqrt" and (t < 0.0 or (t == 0.0 and lane is _JetLane)):
            # sqrt is not differentiable at 0, so the jet lane rejects it too
            raise DomainError(f"sqrt of {'negative' if t < 0 else 'zero'} value {t!r}", node.pos)
        return lane.call(node.func, u)
    if isinstance(node, BinOp):
        a = _walk(node.left, x, y, lane)
        if node.op == "^":
            n = _integer_exponent(node.right)
            if n is not None:
                if n < 0 and lane.value(a) == 0.0:
                    raise DomainError("division by zero (negative power of 0)", node.pos)
                return lane.ipow(a, n)
            base = lane.value(a)
            if base <= 0.0:
                raise DomainError(f"non-integer power of nonpositive base {base!r}", node.pos)
            b = _walk(node.right, x, y, lane)
            return _pow_general(a, b, lane)
        b = _walk(node.right, x, y, lane)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if lane.value(b) == 0.0:
            raise DomainError("division by zero", node.pos)
        return a / b
    raise TypeError(f"not an expression node: {node!r}")


def _pow_general(a, b, lane):
    return lane.call("exp", b * lane.call("log", a))


@dataclass(frozen=True)
class ScalarField:
    """A parsed expression in x and y."""

    root: Node
    source: str = field(default="", compare=False)

    def __call__(self, x, y):
        return eval_scalar(self, x, y)

    def jet(self, x, y):
        return eval_jet2(self, x, y)

    def __str__(self):
        return self.source or to_source(self.root)


def parse(source: str) -> ScalarField:
    if not isinstance(source, str):
        raise TypeError("expression source must be a string")
    return ScalarField(_Parser(source).parse(), source)


def as_field(value) -> ScalarField:
    """Accept a ScalarField, expression text, or a number."""
    if isinstance(value, ScalarField):
        return value
    if isinstance(value, (int, float)):
        return ScalarField(Num(float(value)), repr(float(value)))
    return parse(value)


def eval_scalar(fld: ScalarField, x: float, y: float) -> float:
    return _walk(fld.root, float(x), float(y), _FloatLane)


def eval_jet2(fld: ScalarField, x: float, y: float) -> Jet2:
    """Value and exact partials to second order at (x, y)."""
    return _walk(fld.root, float(x), float(y), _JetLane)


@dataclass(frozen=True)
class PositivityReport:
    minimum: float
    argmin: tuple[float, float]
    samples: int
    positive: bool  # minimum > 0
    at_least_one: bool  # minimum >= 1, the completeness regime

    @property
    def passed(self):
        return self.positive


def validate_positive(fld, region, grid=11) -> PositivityReport:
    """Minimum of ``fld`` over a closed uniform grid on ``region``.

    ``region`` is ``(x0, x1, y0, y1)``; a degenerate side is sampled once.
    The first row-major minimizer is reported.
    """
    fld = as_field(fld)
    best, where = math.inf, None
    pts = grid_points(region, grid)
    for p in pts:
        try:
            v = eval_scalar(fld, *p)
        except DomainError as exc:
            raise exc.at(p) from None
        if v < best:
            best, where = v, p
    return PositivityReport(best, where, len(pts), best > 0.0, best >= 1.0)
