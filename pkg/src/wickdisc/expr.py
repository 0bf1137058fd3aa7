"""A small recursive-descent parser for holomorphic chart expressions.

Grammar (usual precedence, ``^`` binds tightest and is right associative)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" unary)?          # exponent must be an integer constant
    atom   := NUMBER | "i" | VAR | "exp" "(" expr ")" | "(" expr ")"

VAR is x1..xn or y1..yn.  Numbers may carry an ``i``/``j`` suffix.
Evaluation is vectorized over numpy arrays.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .charts import CHARTS, chart_transition

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?[ij]?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^(),]))"
)
_VAR = re.compile(r"^([xy])([1-9]\d*)$")
FUNCTIONS = {"exp": np.exp}


class ExprError(ValueError):
    """Parse or evaluation problem; ``offset`` is a byte offset into the text."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


# -- AST ----------------------------------------------------------------------


class Node:
    offset: int = 0

    def is_const(self) -> bool:
        return False


@dataclass
class Const(Node):
    value: complex
    offset: int = 0

    def is_const(self):
        return True

    def eval(self, env):
        return self.value


@dataclass
class Var(Node):
    name: str
    offset: int = 0

    def eval(self, env):
        return env[self.name]


@dataclass
class Neg(Node):
    arg: Node
    offset: int = 0

    def is_const(self):
        return self.arg.is_const()

    def eval(self, env):
        return -self.arg.eval(env)


@dataclass
class BinOp(Node):
    op: str
    left: Node
    right: Node
    offset: int = 0

    def is_const(self):
        return self.left.is_const() and self.right.is_const()

    def eval(self, env):
        a, b = self.left.eval(env), self.right.eval(env)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if np.any(np.asarray(b) == 0):
            raise ExprError("division by zero", self.offset)
        return a / b


@dataclass
class Pow(Node):
    base: Node
    exponent: int
    offset: int = 0

    def is_const(self):
        return self.base.is_const()

    def eval(self, env):
        b = self.base.eval(env)
        if self.exponent < 0:
            if np.any(np.asarray(b) == 0):
                raise ExprError("zero raised to a negative power", self.offset)
            return 1 / b ** (-self.exponent)
        return b ** self.exponent


@dataclass
class Call(Node):
    fn: str
    arg: Node
    offset: int = 0

    def is_const(self):
        return self.arg.is_const()

    def eval(self, env):
        return FUNCTIONS[self.fn](self.arg.eval(env))


# -- parser -------------------------------------------------------------------


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExprError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        value = m.group(kind)
        out.append((kind, value, m.start(kind)))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars: set = set()

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, off = self.peek()
        if v != value:
            what = "end of input" if kind == "eof" else repr(v)
            raise ExprError(f"expected {value!r}, found {what}", off)
        return self.take()

    def parse(self) -> Node:
        node = self.expr()
        kind, v, off = self.peek()
        if kind != "eof":
            raise ExprError(f"unexpected {v!r}", off)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            _, op, off = self.take()
            node = BinOp(op, node, self.term(), off)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            _, op, off = self.take()
            node = BinOp(op, node, self.unary(), off)
        return node

    def unary(self) -> Node:
        kind, v, off = self.peek()
        if kind == "op" and v in ("+", "-"):
            self.take()
            arg = self.unary()
            return Neg(arg, off) if v == "-" else arg
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        kind, v, off = self.peek()
        if kind == "op" and v in ("^", "**"):
            self.take()
            exp_off = self.peek()[2]
            e = self.unary()
            if not e.is_const():
                raise ExprError("exponent must be an integer constant", exp_off)
            val = complex(e.eval({}))
            if val.imag or val.real != int(val.real):
                raise ExprError("exponent must be an integer constant", exp_off)
            return Pow(base, int(val.real), off)
        return base

    def atom(self) -> Node:
        kind, v, off = self.take()
        if kind == "num":
            if v[-1] in "ij":
                return Const(complex(0, float(v[:-1])), off)
            return Const(complex(float(v)), off)
        if kind == "name":
            if v == "i":
                return Const(1j, off)
            if v in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(v, arg, off)
            if _VAR.match(v):
                self.vars.add(v)
                return Var(v, off)
            raise ExprError(f"unknown identifier {v!r}", off)
        if kind == "op" and v == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "eof":
            raise ExprError("unexpected end of input", off)
        raise ExprError(f"unexpected {v!r}", off)


def _denominators(node: Node, out: list) -> list:
    if isinstance(node, BinOp):
        if node.op == "/":
            out.append(node.right)
        _denominators(node.left, out)
        _denominators(node.right, out)
    elif isinstance(node, Pow):
        if node.exponent < 0:
            out.append(node.base)
        _denominators(node.base, out)
    elif isinstance(node, (Neg, Call)):
        _denominators(node.arg, out)
    return out


@dataclass
class HoloExpr:
    """Parsed expression tagged with the chart its variables refer to."""

    text: str
    root: Node
    chart: str = "p"
    n: int = 1
    denominators: list = field(default_factory=list)

    def evaluate(self, x, y):
        """Evaluate with this expression's own chart coordinates."""
        env = {}
        for i in range(self.n):
            env[f"x{i + 1}"] = x[i]
            env[f"y{i + 1}"] = y[i]
        return self.root.eval(env)

    def __call__(self, chart, x, y):
        """Evaluator protocol: coordinates are given in ``chart``."""
        if chart != self.chart:
            x, y = chart_transition(chart, self.chart, x, y)
        return self.evaluate(x, y)


def parse_expr(text: str, chart: str = "p", n: int | None = None) -> HoloExpr:
    """Parse ``text`` into a HoloExpr; raises ExprError with a byte offset."""
    chart = chart.lower()
    if chart not in CHARTS:
        raise ValueError(f"unknown chart {chart!r}")
    p = _Parser(text)
    root = p.parse()
    used = max((int(_VAR.match(v).group(2)) for v in p.vars), default=1)
    if n is None:
        n = used
    elif used > n:
        bad = max(p.vars, key=lambda v: int(_VAR.match(v).group(2)))
        raise ExprError(f"variable {bad} exceeds n = {n}", text.find(bad))
    return HoloExpr(text, root, chart, n, _denominators(root, []))
