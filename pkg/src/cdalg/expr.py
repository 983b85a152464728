"""Expression grammar for structure constants, indices and basis rows.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER | NAME | NAME '(' expr ')' | '(' expr ')'

Function calls are ``sqrt`` and, when macros are enabled, ``Theta`` and
``Psi``.  Implicit multiplication (``2t``) is a syntax error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Union

from .errors import InputError, ParseError, SqrtError
from .scalars import Scalar, scalar, substitute, var

__all__ = [
    "Node",
    "Num",
    "Var",
    "Lit",
    "Neg",
    "BinOp",
    "Pow",
    "Sqrt",
    "SqrtExpr",
    "parse",
    "parse_expression",
    "evaluate",
    "free_variables",
    "has_sqrt",
    "radicands",
    "linear_form",
    "rational_sqrt",
]


# -- AST --------------------------------------------------------------------


class Node:
    __slots__ = ()


@dataclass(frozen=True)
class Num(Node):
    value: Fraction


@dataclass(frozen=True)
class Lit(Node):
    """An already-evaluated scalar."""

    value: Scalar


@dataclass(frozen=True)
class Var(Node):
    name: str


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int


@dataclass(frozen=True)
class Sqrt(Node):
    radicand: Node


def theta(x: Node) -> Node:
    """``(1 + sqrt(1 - 4*x)) / 2``"""
    root = Sqrt(BinOp("-", Num(Fraction(1)), BinOp("*", Num(Fraction(4)), x)))
    return BinOp("/", BinOp("+", Num(Fraction(1)), root), Num(Fraction(2)))


def psi(x: Node) -> Node:
    return BinOp("-", Num(Fraction(1)), theta(x))


MACROS = {"Theta": theta, "Psi": psi}


# -- tokenizer --------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^(),]))")


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str, line: int, col0: int) -> list[_Tok]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", line, col0 + start)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, allowed, macros, line, col0):
        self.text = text
        self.toks = _tokenize(text, line, col0)
        self.i = 0
        self.allowed = allowed
        self.macros = macros
        self.line = line
        self.col0 = col0

    def error(self, msg, tok=None):
        tok = tok or self.toks[self.i]
        raise ParseError(msg, self.line, self.col0 + tok.pos)

    @property
    def tok(self):
        return self.toks[self.i]

    def take(self, text=None):
        tok = self.tok
        if text is not None and tok.text != text:
            self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            if self.tok.kind in ("int", "name") or self.tok.text == "(":
                self.error("implicit multiplication is not allowed; use '*'")
            self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.tok.text in ("+", "-"):
            op = self.take().text
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.tok.text in ("*", "/"):
            op = self.take().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.tok.text == "-":
            self.take()
            return Neg(self.unary())
        if self.tok.text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        if self.tok.text == "^":
            self.take()
            if self.tok.kind != "int":
                self.error("exponent must be a nonnegative integer literal")
            node = Pow(node, int(self.take().text))
        if self.tok.kind in ("int", "name") or self.tok.text == "(":
            self.error("implicit multiplication is not allowed; use '*'")
        return node

    def atom(self):
        tok = self.tok
        if tok.kind == "int":
            self.take()
            return Num(Fraction(int(tok.text)))
        if tok.kind == "name":
            self.take()
            if self.tok.text == "(":
                return self.call(tok)
            if self.allowed is not None and tok.text not in self.allowed:
                self.error(f"unknown variable {tok.text!r}", tok)
            return Var(tok.text)
        if tok.text == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        self.error(f"unexpected {tok.text or 'end of input'!r}")

    def call(self, name_tok):
        name = name_tok.text
        if name != "sqrt" and not (self.macros and name in MACROS):
            self.error(f"unknown function {name!r}", name_tok)
        self.take("(")
        arg = self.expr()
        self.take(")")
        if name == "sqrt":
            return Sqrt(arg)
        return MACROS[name](arg)


def parse(text: str, allowed=None, macros: bool = False, line: int = 1, column: int = 1) -> Node:
    """Parse ``text`` to an AST.  ``allowed`` restricts variable names."""
    allowed = None if allowed is None else frozenset(allowed)
    return _Parser(text, allowed, macros, line, column).parse()


# -- analysis ---------------------------------------------------------------


def free_variables(node: Node) -> frozenset:
    if isinstance(node, Var):
        return frozenset([node.name])
    if isinstance(node, Num):
        return frozenset()
    if isinstance(node, Lit):
        return node.value.variables
    if isinstance(node, BinOp):
        return free_variables(node.left) | free_variables(node.right)
    if isinstance(node, Neg):
        return free_variables(node.operand)
    if isinstance(node, Pow):
        return free_variables(node.base)
    return free_variables(node.radicand)


def radicands(node: Node) -> list[Node]:
    """Radicands of every ``sqrt`` node, innermost first."""
    if isinstance(node, Sqrt):
        return radicands(node.radicand) + [node.radicand]
    if isinstance(node, BinOp):
        return radicands(node.left) + radicands(node.right)
    if isinstance(node, Neg):
        return radicands(node.operand)
    if isinstance(node, Pow):
        return radicands(node.base)
    return []


def has_sqrt(node: Node) -> bool:
    return bool(radicands(node))


# -- evaluation -------------------------------------------------------------


def rational_sqrt(value: Scalar) -> Scalar:
    """Nonnegative rational square root of a constant scalar."""
    if not value.is_constant():
        raise SqrtError(f"sqrt radicand {value} is not a rational constant")
    q = value.to_fraction()
    if q < 0:
        raise SqrtError(f"sqrt radicand {q} is negative")
    num = _isqrt_exact(q.numerator)
    den = _isqrt_exact(q.denominator)
    if num is None or den is None:
        raise SqrtError(f"sqrt radicand {q} is not a rational square")
    return scalar(Fraction(num, den))


def _isqrt_exact(n: int) -> Optional[int]:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def evaluate(node: Node, env: Optional[Mapping[str, object]] = None) -> Scalar:
    """Evaluate to a Scalar.  Unbound names become variables."""
    env = env or {}
    if isinstance(node, Num):
        return scalar(node.value)
    if isinstance(node, Lit):
        if env:
            return substitute(node.value, env)
        return node.value
    if isinstance(node, Var):
        if node.name in env:
            return scalar(env[node.name])
        return var(node.name)
    if isinstance(node, Neg):
        return -evaluate(node.operand, env)
    if isinstance(node, BinOp):
        a = evaluate(node.left, env)
        b = evaluate(node.right, env)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        return a / b
    if isinstance(node, Pow):
        return evaluate(node.base, env) ** node.exponent
    return rational_sqrt(evaluate(node.radicand, env))


class SqrtExpr:
    """Expression with unresolved square roots, evaluated once parameters
    are sampled so every radicand is a rational square."""

    def __init__(self, node: Node, text: str = ""):
        self.node = node
        self.text = text

    @property
    def free_variables(self):
        return free_variables(self.node)

    def radicands(self):
        return radicands(self.node)

    def evaluate(self, assignment: Mapping[str, object]) -> Scalar:
        return evaluate(self.node, assignment)

    def __repr__(self):
        return f"SqrtExpr({self.text!r})"


def parse_expression(text: str, allowed_vars=None, mode: str = "exact", macros: bool = False) -> Union[Scalar, SqrtExpr]:
    if mode not in ("exact", "sampled"):
        raise InputError(f"unknown mode {mode!r}")
    node = parse(text, allowed_vars, macros=macros)
    if has_sqrt(node):
        if mode == "exact":
            raise SqrtError("sqrt not allowed in exact mode")
        return SqrtExpr(node, text)
    return evaluate(node)


# -- linear forms -----------------------------------------------------------


def linear_form(node: Node, basis: Mapping[str, int]) -> dict[int, Node]:
    """Split ``node`` into coefficient expressions of basis symbols.

    ``basis`` maps symbol names (``e1`` ...) to indices.  Raises
    :class:`InputError` if the expression is not linear in them or has a
    basis-free part.
    """
    coeffs, const = _split(node, basis)
    if const is not None:
        raise InputError("right-hand side has a term without a basis vector")
    return coeffs


def _mentions(node, basis):
    return bool(free_variables(node) & basis.keys())


def _split(node, basis):
    # returns (dict index -> coefficient node, constant node or None)
    if not _mentions(node, basis):
        return {}, node
    if isinstance(node, Var):
        return {basis[node.name]: Num(Fraction(1))}, None
    if isinstance(node, Neg):
        c, k = _split(node.operand, basis)
        return {i: Neg(v) for i, v in c.items()}, None if k is None else Neg(k)
    if isinstance(node, BinOp) and node.op in "+-":
        lc, lk = _split(node.left, basis)
        rc, rk = _split(node.right, basis)
        out = dict(lc)
        for i, v in rc.items():
            v = v if node.op == "+" else Neg(v)
            out[i] = BinOp("+", out[i], v) if i in out else v
        if rk is not None and node.op == "-":
            rk = Neg(rk)
        if lk is None:
            k = rk
        elif rk is None:
            k = lk
        else:
            k = BinOp("+", lk, rk)
        return out, k
    if isinstance(node, BinOp) and node.op == "*":
        left_lin = _mentions(node.left, basis)
        right_lin = _mentions(node.right, basis)
        if left_lin and right_lin:
            raise InputError("product of two basis vectors in a linear expression")
        lin, scale = (node.left, node.right) if left_lin else (node.right, node.left)
        c, k = _split(lin, basis)
        if left_lin:
            c = {i: BinOp("*", v, scale) for i, v in c.items()}
        else:
            c = {i: BinOp("*", scale, v) for i, v in c.items()}
        return c, None if k is None else BinOp("*", k, scale)
    if isinstance(node, BinOp) and node.op == "/":
        if _mentions(node.right, basis):
            raise InputError("division by a basis vector")
        c, k = _split(node.left, basis)
        return {i: BinOp("/", v, node.right) for i, v in c.items()}, None if k is None else BinOp("/", k, node.right)
    raise InputError("basis vectors may only appear linearly")
