"""Bundle expression trees and the prefix-functional text grammar.

Grammar (all prefix, ASCII, whitespace tolerated)::

    expr := "Q" | "S" | "Theta"
          | "O(" int ")"
          | "irr[" int ("," int)* ("|" int ("," int)*)? "]"
          | "wedge(" int "," expr ")"
          | "sym(" int "," expr ")"
          | "dual(" expr ")"
          | "twist(" expr "," int ")"
          | "tensor(" expr "," expr ")"
          | "sum(" expr "," expr ")"

``irr`` lists the k-block entries; the second block is zero unless a
``|`` separator appears.  ``parse_expr`` followed by ``to_text`` is the
identity on canonical forms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, StructureError
from .weights import BlockWeight, GrassContext


class Expr:
    """Base class for bundle-expression nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Irr(Expr):
    """Irreducible bundle with the given highest weight."""

    weight: BlockWeight


@dataclass(frozen=True)
class Quotient(Expr):
    """The universal quotient bundle (rank k)."""


@dataclass(frozen=True)
class Sub(Expr):
    """The universal sub-bundle (rank n-k)."""


@dataclass(frozen=True)
class Tangent(Expr):
    """The tangent bundle of the Grassmannian."""


@dataclass(frozen=True)
class Line(Expr):
    """The r-th power of the Pluecker line bundle."""

    r: int


@dataclass(frozen=True)
class Wedge(Expr):
    p: int
    child: Expr


@dataclass(frozen=True)
class Sym(Expr):
    p: int
    child: Expr


@dataclass(frozen=True)
class Dual(Expr):
    child: Expr


@dataclass(frozen=True)
class Twist(Expr):
    child: Expr
    r: int


@dataclass(frozen=True)
class Tensor(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class DirectSum(Expr):
    left: Expr
    right: Expr


Q = Quotient()
S = Sub()
THETA = Tangent()


def to_text(e: Expr) -> str:
    """Canonical text form of an expression (inverse of parse_expr)."""
    if isinstance(e, Quotient):
        return "Q"
    if isinstance(e, Sub):
        return "S"
    if isinstance(e, Tangent):
        return "Theta"
    if isinstance(e, Line):
        return f"O({e.r})"
    if isinstance(e, Irr):
        first = ",".join(str(x) for x in e.weight.first)
        if any(e.weight.second):
            second = ",".join(str(x) for x in e.weight.second)
            return f"irr[{first}|{second}]"
        return f"irr[{first}]"
    if isinstance(e, Wedge):
        return f"wedge({e.p},{to_text(e.child)})"
    if isinstance(e, Sym):
        return f"sym({e.p},{to_text(e.child)})"
    if isinstance(e, Dual):
        return f"dual({to_text(e.child)})"
    if isinstance(e, Twist):
        return f"twist({to_text(e.child)},{e.r})"
    if isinstance(e, Tensor):
        return f"tensor({to_text(e.left)},{to_text(e.right)})"
    if isinstance(e, DirectSum):
        return f"sum({to_text(e.left)},{to_text(e.right)})"
    raise StructureError(f"unknown expression node {e!r}")


_TOKEN = re.compile(r"\s*(?:(-?\d+)|([A-Za-z]+)|([()\[\],|]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].isspace():
                break
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            tokens.append(("punct", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("eof", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: GrassContext):
        self.text = text
        self.ctx = ctx
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind, value=None):
        tok = self.tokens[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            found = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {want!r}, found {found}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2])
        return e

    def int_arg(self) -> int:
        return self.take("int")[1]

    def expr(self) -> Expr:
        tok = self.peek()
        if tok[0] != "name":
            found = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected an expression, found {found}", tok[2])
        name = tok[1]
        self.i += 1
        if name == "Q":
            return Q
        if name == "S":
            return S
        if name == "Theta":
            return THETA
        if name == "O":
            self.take("punct", "(")
            r = self.int_arg()
            self.take("punct", ")")
            return Line(r)
        if name == "irr":
            return self.irr(tok[2])
        if name in ("wedge", "sym"):
            self.take("punct", "(")
            p = self.int_arg()
            self.take("punct", ",")
            child = self.expr()
            self.take("punct", ")")
            return Wedge(p, child) if name == "wedge" else Sym(p, child)
        if name == "dual":
            self.take("punct", "(")
            child = self.expr()
            self.take("punct", ")")
            return Dual(child)
        if name == "twist":
            self.take("punct", "(")
            child = self.expr()
            self.take("punct", ",")
            r = self.int_arg()
            self.take("punct", ")")
            return Twist(child, r)
        if name in ("tensor", "sum"):
            self.take("punct", "(")
            left = self.expr()
            self.take("punct", ",")
            right = self.expr()
            self.take("punct", ")")
            return Tensor(left, right) if name == "tensor" else DirectSum(left, right)
        raise ParseError(f"unknown operator {name!r}", tok[2])

    def irr(self, at: int) -> Expr:
        self.take("punct", "[")
        first = [self.int_arg()]
        while self.peek()[:2] == ("punct", ","):
            self.i += 1
            first.append(self.int_arg())
        second = None
        if self.peek()[:2] == ("punct", "|"):
            self.i += 1
            second = [self.int_arg()]
            while self.peek()[:2] == ("punct", ","):
                self.i += 1
                second.append(self.int_arg())
        self.take("punct", "]")
        k, n = self.ctx.k, self.ctx.n
        if len(first) != k:
            raise ParseError(f"irr lists {len(first)} entries, expected k={k}", at)
        if second is None:
            second = [0] * (n - k)
        if len(second) != n - k:
            raise ParseError(
                f"irr second block lists {len(second)} entries, expected n-k={n - k}", at
            )
        return Irr(BlockWeight(self.ctx, tuple(first), tuple(second)))


def parse_expr(text: str, ctx: GrassContext) -> Expr:
    """Parse the prefix grammar; errors carry the byte offset."""
    return _Parser(text, ctx).parse()


def split_expr_list(text: str) -> list[str]:
    """Split a comma-separated list of expressions at depth-0 commas."""
    parts = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts if p.strip()]
