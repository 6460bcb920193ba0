"""Tiny expression language for curve graphs v = g(u).

Supported: ``+ - * /``, ``^`` with a constant exponent, parentheses, unary
minus, the functions sin, cos, exp, log, sqrt, the variable ``u``, and numeric
literals. Parsing is recursive descent with standard precedence; every parse
error carries the byte offset where it occurred.

The AST is a frozen dataclass tree, so structural equality is dataclass
equality and :func:`to_text` / :func:`parse_expression` round-trip exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import dual
from .dual import Jet
from .errors import EvalDomainError, ExpressionError

__all__ = [
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "Call",
    "Node",
    "FUNCTIONS",
    "parse_expression",
    "to_text",
    "eval_expression",
]

FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt")

_FUNC_IMPL = {
    "sin": dual.sin,
    "cos": dual.cos,
    "exp": dual.exp,
    "log": dual.log,
    "sqrt": dual.sqrt,
}


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Union[Num, Var, Neg, BinOp, Call]


_NUM_RE = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, offset: int | None = None):
        raise ExpressionError(message, self.pos if offset is None else offset)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str):
        if self.peek() != char:
            self.error(f"expected '{char}'")
        self.pos += 1

    # grammar: expr := term (('+'|'-') term)*
    def parse_expr(self) -> Node:
        node = self.parse_term()
        while True:
            ch = self.peek()
            if ch in "+-":
                self.pos += 1
                node = BinOp(ch, node, self.parse_term())
            else:
                return node

    # term := unary (('*'|'/') unary)*
    def parse_term(self) -> Node:
        node = self.parse_unary()
        while True:
            ch = self.peek()
            if ch in "*/":
                self.pos += 1
                node = BinOp(ch, node, self.parse_unary())
            else:
                return node

    # unary := '-' unary | power
    def parse_unary(self) -> Node:
        if self.peek() == "-":
            self.pos += 1
            inner = self.parse_unary()
            if isinstance(inner, Num):
                return Num(-inner.value)
            return Neg(inner)
        return self.parse_power()

    # power := atom ('^' unary)?   (right-associative via the recursion)
    def parse_power(self) -> Node:
        node = self.parse_atom()
        if self.peek() == "^":
            caret = self.pos
            self.pos += 1
            exponent = self.parse_unary()
            if _mentions_var(exponent):
                self.error("exponent must be a constant expression", caret)
            return BinOp("^", node, exponent)
        return node

    def parse_atom(self) -> Node:
        ch = self.peek()
        start = self.pos
        if ch == "":
            self.error("unexpected end of expression")
        if ch == "(":
            self.pos += 1
            node = self.parse_expr()
            self.expect(")")
            return node
        m = _NUM_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return Num(float(m.group()))
        m = _IDENT_RE.match(self.text, self.pos)
        if m:
            name = m.group()
            self.pos = m.end()
            if self.peek() == "(":
                if name not in FUNCTIONS:
                    self.error(f"unknown function '{name}'", start)
                self.pos += 1
                arg = self.parse_expr()
                self.expect(")")
                return Call(name, arg)
            if name == "u":
                return Var()
            self.error(f"unknown identifier '{name}' (the variable is 'u')", start)
        self.error(f"unexpected character {ch!r}")


def _mentions_var(node: Node) -> bool:
    if isinstance(node, Var):
        return True
    if isinstance(node, Neg):
        return _mentions_var(node.operand)
    if isinstance(node, BinOp):
        return _mentions_var(node.left) or _mentions_var(node.right)
    if isinstance(node, Call):
        return _mentions_var(node.arg)
    return False


def parse_expression(text: str) -> Node:
    """Parse expression text into an AST.

    Raises :class:`ExpressionError` (with byte offset) on syntax errors,
    unknown identifiers, or a non-constant exponent.
    """
    if not text or not text.strip():
        raise ExpressionError("empty expression", 0)
    p = _Parser(text)
    node = p.parse_expr()
    if p.peek() != "":
        p.error(f"unexpected trailing input {p.peek()!r}")
    return node


# precedence levels used by the printer; atoms sit above everything
_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return {"+": _PREC_ADD, "-": _PREC_ADD, "*": _PREC_MUL, "/": _PREC_MUL, "^": _PREC_POW}[node.op]
    if isinstance(node, Neg):
        return _PREC_NEG
    if isinstance(node, Num) and node.value < 0:
        return _PREC_NEG  # prints with a leading '-', binds like unary minus
    return _PREC_ATOM


def _render(node: Node, min_prec: int) -> str:
    text = _render_bare(node)
    if _prec(node) < min_prec:
        return f"({text})"
    return text


def _render_bare(node: Node) -> str:
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return "u"
    if isinstance(node, Neg):
        return "-" + _render(node.operand, _PREC_POW)
    if isinstance(node, Call):
        return f"{node.func}({_render_bare(node.arg)})"
    if isinstance(node, BinOp):
        if node.op in "+-":
            return f"{_render(node.left, _PREC_ADD)} {node.op} {_render(node.right, _PREC_ADD + 1)}"
        if node.op in "*/":
            return f"{_render(node.left, _PREC_MUL)}{node.op}{_render(node.right, _PREC_MUL + 1)}"
        # '^': the base must be an atom, the exponent re-parses as a unary
        return f"{_render(node.left, _PREC_ATOM)}^{_render(node.right, _PREC_NEG)}"
    raise TypeError(f"not an AST node: {node!r}")


def to_text(node: Node) -> str:
    """Render the AST as expression text that re-parses to an identical tree."""
    return _render_bare(node)


def _eval(node: Node, u):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return u
    if isinstance(node, Neg):
        return -_eval(node.operand, u)
    if isinstance(node, Call):
        return _FUNC_IMPL[node.func](_eval(node.arg, u))
    op = node.op
    if op == "^":
        base = _eval(node.left, u)
        power = _eval(node.right, 0.0)  # exponent subtree is constant
        if isinstance(base, Jet):
            return base**power
        try:
            out = base**power
        except (ZeroDivisionError, OverflowError, ValueError) as exc:
            raise EvalDomainError(f"cannot raise {base!r} to {power!r}") from exc
        if isinstance(out, complex):
            raise EvalDomainError(f"{base!r}^{power!r} is not real")
        return out
    a = _eval(node.left, u)
    b = _eval(node.right, u)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if isinstance(b, Jet) or isinstance(a, Jet):
        return a / b
    if dual._any(b == 0.0):
        raise EvalDomainError("division by zero")
    return a / b


def eval_expression(node: Node, u):
    """Evaluate the AST at ``u`` (a float, Jet, or array).

    Domain violations raise :class:`EvalDomainError` instead of propagating
    NaN or infinity.
    """
    out = _eval(node, u)
    ok = dual.is_finite(out) if isinstance(out, (Jet, float)) else bool(np.isfinite(out).all())
    if not ok:
        raise EvalDomainError("expression evaluated to a non-finite value")
    return out
