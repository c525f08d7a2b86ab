"""A small expression language for chart-level field components.

Expressions are parsed once against a fixed coordinate-name list and then
evaluated many times at points, either plainly or in forward mode with dual
numbers carrying the full coordinate gradient.  Supported syntax: decimal
literals, coordinate symbols, ``+ - * /``, unary minus, ``^`` with a literal
integer exponent, and the functions ``sqrt, sin, cos, exp, log``.

Precedence, tightest first: power, unary minus, ``* /``, ``+ -``; binary
operators associate to the left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, PreconditionError

FUNCTIONS = ("sqrt", "sin", "cos", "exp", "log")


class ExpressionSyntaxError(InputError):
    """Raised by the parser; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class UnknownSymbolError(ExpressionSyntaxError):
    """An identifier that is neither a coordinate nor a known function."""

    def __init__(self, name: str, position: int):
        super().__init__(f"unknown identifier '{name}'", position)
        self.name = name


class ExpressionDomainError(PreconditionError):
    """Evaluation left the domain of a subexpression (log, sqrt, division)."""

    def __init__(self, message: str, node: "Node"):
        span = "" if node.span is None else f" (source offsets {node.span[0]}..{node.span[1]})"
        super().__init__(f"{message} in '{to_source(node)}'{span}")
        self.node = node


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Node:
    span: tuple[int, int] | None = field(default=None, compare=False, kw_only=True)


@dataclass(frozen=True)
class Literal(Node):
    value: float = 0.0


@dataclass(frozen=True)
class Coordinate(Node):
    index: int = 0
    name: str = ""


@dataclass(frozen=True)
class Unary(Node):
    """Unary minus."""

    operand: Node = None  # type: ignore[assignment]


@dataclass(frozen=True)
class Binary(Node):
    op: str = "+"
    left: Node = None  # type: ignore[assignment]
    right: Node = None  # type: ignore[assignment]


@dataclass(frozen=True)
class Power(Node):
    base: Node = None  # type: ignore[assignment]
    exponent: int = 1


@dataclass(frozen=True)
class Call(Node):
    func: str = "sqrt"
    arg: Node = None  # type: ignore[assignment]


# ---------------------------------------------------------------------------
# Tokenizer / parser
# ---------------------------------------------------------------------------

_OPS = set("+-*/^()")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Return (kind, text, position) triples; kinds: num, ident, op."""
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append(("op", ch, i))
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            tokens.append(("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        raise ExpressionSyntaxError(f"unexpected character '{ch}'", i)
    return tokens


class _Parser:
    def __init__(self, text: str, coord_names: list[str]):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.coords = {name: i for i, name in enumerate(coord_names)}

    def parse(self) -> Node:
        node = self._expr()
        if self.pos < len(self.tokens):
            kind, tok, at = self.tokens[self.pos]
            raise ExpressionSyntaxError(f"unexpected '{tok}'", at)
        return node

    # -- token helpers --

    def _peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self) -> tuple[str, str, int]:
        tok = self._peek()
        if tok is None:
            raise ExpressionSyntaxError("unexpected end of expression", len(self.text))
        self.pos += 1
        return tok

    def _expect_op(self, op: str) -> int:
        kind, tok, at = self._next()
        if kind != "op" or tok != op:
            raise ExpressionSyntaxError(f"expected '{op}', found '{tok}'", at)
        return at

    # -- grammar --

    def _expr(self) -> Node:
        node = self._term()
        while (tok := self._peek()) and tok[0] == "op" and tok[1] in "+-":
            self._next()
            right = self._term()
            node = Binary(op=tok[1], left=node, right=right, span=_merge(node, right))
        return node

    def _term(self) -> Node:
        node = self._unary()
        while (tok := self._peek()) and tok[0] == "op" and tok[1] in "*/":
            self._next()
            right = self._unary()
            node = Binary(op=tok[1], left=node, right=right, span=_merge(node, right))
        return node

    def _unary(self) -> Node:
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] == "-":
            _, _, at = self._next()
            operand = self._unary()
            return Unary(operand=operand, span=(at, operand.span[1] if operand.span else at))
        return self._power()

    def _power(self) -> Node:
        base = self._atom()
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self._next()
            exponent, end = self._integer_exponent()
            return Power(base=base, exponent=exponent, span=(base.span[0] if base.span else 0, end))
        return base

    def _integer_exponent(self) -> tuple[int, int]:
        sign = 1
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] == "-":
            self._next()
            sign = -1
        kind, text, at = self._next()
        if kind != "num" or any(c in text for c in ".eE"):
            raise ExpressionSyntaxError("exponent must be an integer literal", at)
        return sign * int(text), at + len(text)

    def _atom(self) -> Node:
        kind, tok, at = self._next()
        if kind == "num":
            return Literal(value=float(tok), span=(at, at + len(tok)))
        if kind == "ident":
            if tok in FUNCTIONS:
                self._expect_op("(")
                arg = self._expr()
                end = self._expect_op(")") + 1
                return Call(func=tok, arg=arg, span=(at, end))
            if tok in self.coords:
                return Coordinate(index=self.coords[tok], name=tok, span=(at, at + len(tok)))
            raise UnknownSymbolError(tok, at)
        if kind == "op" and tok == "(":
            node = self._expr()
            self._expect_op(")")
            return node
        raise ExpressionSyntaxError(f"unexpected '{tok}'", at)


def _merge(left: Node, right: Node) -> tuple[int, int] | None:
    if left.span is None or right.span is None:
        return None
    return (left.span[0], right.span[1])


def parse(text: str, coord_names: list[str]) -> Node:
    """Parse ``text`` against the coordinate names; raises ExpressionSyntaxError."""
    return _Parser(text, list(coord_names)).parse()


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4, "atom": 5}


def to_source(node: Node) -> str:
    """Render a tree back to parseable source; reparsing yields an equal tree."""
    text, _ = _render(node)
    return text


def _render(node: Node) -> tuple[str, int]:
    if isinstance(node, Literal):
        value = node.value
        if value == int(value) and abs(value) < 1e15:
            return (repr(int(value)), _PREC["atom"])
        return (repr(value), _PREC["atom"])
    if isinstance(node, Coordinate):
        return (node.name, _PREC["atom"])
    if isinstance(node, Unary):
        inner, prec = _render(node.operand)
        if prec < _PREC["neg"]:
            inner = f"({inner})"
        return (f"-{inner}", _PREC["neg"])
    if isinstance(node, Power):
        base, prec = _render(node.base)
        # power binds tightest, so any structured base needs parentheses
        if prec < _PREC["atom"]:
            base = f"({base})"
        return (f"{base}^{node.exponent}", _PREC["^"])
    if isinstance(node, Call):
        return (f"{node.func}({_render(node.arg)[0]})", _PREC["atom"])
    if isinstance(node, Binary):
        my = _PREC[node.op]
        left, lp = _render(node.left)
        right, rp = _render(node.right)
        if lp < my:
            left = f"({left})"
        # left-associative: an equal-precedence right child needs parentheses
        if rp <= my:
            right = f"({right})"
        return (f"{left} {node.op} {right}", my)
    raise TypeError(f"not an expression node: {node!r}")


# ---------------------------------------------------------------------------
# Dual numbers and evaluation
# ---------------------------------------------------------------------------


class Dual:
    """Value plus gradient with respect to all m coordinates."""

    __slots__ = ("value", "grad")

    def __init__(self, value: float, grad: np.ndarray):
        self.value = float(value)
        self.grad = grad

    @staticmethod
    def constant(value: float, m: int) -> "Dual":
        return Dual(value, np.zeros(m))

    @staticmethod
    def variable(value: float, index: int, m: int) -> "Dual":
        grad = np.zeros(m)
        grad[index] = 1.0
        return Dual(value, grad)

    def __add__(self, other):
        other = _coerce(other, self)
        return Dual(self.value + other.value, self.grad + other.grad)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self)
        return Dual(self.value - other.value, self.grad - other.grad)

    def __rsub__(self, other):
        return _coerce(other, self) - self

    def __mul__(self, other):
        other = _coerce(other, self)
        return Dual(self.value * other.value, self.value * other.grad + other.value * self.grad)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other, self)
        v = other.value
        return Dual(self.value / v, (self.grad * v - self.value * other.grad) / (v * v))

    def __rtruediv__(self, other):
        return _coerce(other, self) / self

    def __neg__(self):
        return Dual(-self.value, -self.grad)

    def __repr__(self):
        return f"Dual({self.value!r}, {self.grad!r})"


def _coerce(x, like: Dual) -> Dual:
    if isinstance(x, Dual):
        return x
    return Dual(float(x), np.zeros_like(like.grad))


def dual_sqrt(x: Dual) -> Dual:
    root = math.sqrt(x.value)
    return Dual(root, x.grad / (2.0 * root))


def eval_dual(node: Node, point: np.ndarray) -> Dual:
    """Forward-mode evaluation: value plus d/dx_mu for every coordinate."""
    point = np.asarray(point, dtype=float)
    m = point.shape[0]

    def rec(n: Node) -> Dual:
        if isinstance(n, Literal):
            return Dual.constant(n.value, m)
        if isinstance(n, Coordinate):
            if n.index >= m:
                raise PreconditionError(
                    f"coordinate '{n.name}' (index {n.index}) outside point of dimension {m}"
                )
            return Dual.variable(point[n.index], n.index, m)
        if isinstance(n, Unary):
            return -rec(n.operand)
        if isinstance(n, Binary):
            left, right = rec(n.left), rec(n.right)
            if n.op == "+":
                return left + right
            if n.op == "-":
                return left - right
            if n.op == "*":
                return left * right
            if abs(right.value) < 1e-300:
                raise ExpressionDomainError("division by zero", n)
            return left / right
        if isinstance(n, Power):
            base = rec(n.base)
            k = n.exponent
            if k == 0:
                return Dual.constant(1.0, m)
            if k < 0 and abs(base.value) < 1e-300:
                raise ExpressionDomainError("zero raised to a negative power", n)
            value = base.value**k
            grad = k * base.value ** (k - 1) * base.grad
            return Dual(value, grad)
        if isinstance(n, Call):
            arg = rec(n.arg)
            if n.func == "sqrt":
                if arg.value < 0.0:
                    raise ExpressionDomainError("square root of a negative value", n)
                if arg.value == 0.0:
                    raise ExpressionDomainError("square root derivative singular at zero", n)
                return dual_sqrt(arg)
            if n.func == "sin":
                return Dual(math.sin(arg.value), math.cos(arg.value) * arg.grad)
            if n.func == "cos":
                return Dual(math.cos(arg.value), -math.sin(arg.value) * arg.grad)
            if n.func == "exp":
                e = math.exp(arg.value)
                return Dual(e, e * arg.grad)
            if n.func == "log":
                if arg.value <= 0.0:
                    raise ExpressionDomainError("logarithm of a non-positive value", n)
                return Dual(math.log(arg.value), arg.grad / arg.value)
        raise TypeError(f"not an expression node: {n!r}")

    return rec(node)


def eval_value(node: Node, point: np.ndarray) -> float:
    """Plain evaluation (shares the dual code path; m stays tiny here)."""
    return eval_dual(node, point).value


def fd_gradient(node: Node, point: np.ndarray, h: float = 1e-5) -> np.ndarray:
    """Central-difference gradient, the independent check on eval_dual."""
    point = np.asarray(point, dtype=float)
    grad = np.zeros_like(point)
    for mu in range(point.shape[0]):
        step = np.zeros_like(point)
        step[mu] = h
        grad[mu] = (eval_value(node, point + step) - eval_value(node, point - step)) / (2.0 * h)
    return grad
