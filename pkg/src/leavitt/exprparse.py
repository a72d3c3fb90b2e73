"""Expression surface syntax for algebra elements.

Grammar (whitespace between tokens is free):

    expr    := product (('+'|'-') product)*
    product := atom+                       -- juxtaposition is multiplication
    atom    := scalar | primary postfix*
    primary := IDENT | IDENT '[' NAT ']' | '(' expr ')'
    postfix := '*' | '^' NAT               -- '*' is the involution
    scalar  := ['-'] NAT ('/' NAT)?

Postfix binds tighter than juxtaposition, which binds tighter than '+'/'-'.
An IDENT names a vertex, a multiplicity-1 bundle, or an indexed edge
`id[k]`.  `x^0` is the identity (the sum of all vertices), defined for
nonempty graphs only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import algebra
from .graph import OMEGA, EdgeRef, Graph, LeavittError


class ExprSyntaxError(LeavittError):
    def __init__(self, message, pos):
        super().__init__(f"at position {pos}: {message}")
        self.pos = pos


class UnknownIdent(LeavittError):
    pass


class BundleNeedsIndex(LeavittError):
    pass


class OmegaBundleNeedsIndex(BundleNeedsIndex):
    pass


# -- AST ----------------------------------------------------------------------

@dataclass(frozen=True)
class Sum:
    parts: tuple  # pairs (sign, node), sign in {+1, -1}


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Star:
    inner: object


@dataclass(frozen=True)
class Power:
    inner: object
    exponent: int


@dataclass(frozen=True)
class ScalarLiteral:
    value: Fraction


@dataclass(frozen=True)
class Ident:
    name: str
    index: int | None = None


_TOKEN = re.compile(r"\s*(?:(?P<nat>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9']*)"
                    r"|(?P<sym>[-+*^()\[\]/]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ExprSyntaxError(
                    f"unexpected character {text[pos:].strip()[0]!r}", pos)
            break
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, length):
        self.tokens = tokens
        self.i = 0
        self.length = length

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, self.length)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_sym(self, sym):
        kind, val, pos = self.take()
        if kind != "sym" or val != sym:
            raise ExprSyntaxError(f"expected {sym!r}", pos)

    def parse_expr(self):
        parts = [(1, self.parse_product())]
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val in "+-":
                self.take()
                parts.append((1 if val == "+" else -1, self.parse_product()))
            else:
                break
        return parts[0][1] if len(parts) == 1 else Sum(tuple(parts))

    def parse_product(self):
        factors = [self.parse_atom()]
        while self._starts_atom():
            factors.append(self.parse_atom())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def _starts_atom(self):
        kind, val, _ = self.peek()
        if kind in ("nat", "ident"):
            return True
        return kind == "sym" and val == "("

    def parse_atom(self):
        kind, val, pos = self.peek()
        if kind == "sym" and val == "-" or kind == "nat":
            return self.parse_scalar()
        node = self.parse_primary()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                node = Star(node)
            elif kind == "sym" and val == "^":
                self.take()
                k, v, p = self.take()
                if k != "nat":
                    raise ExprSyntaxError("expected an exponent", p)
                node = Power(node, int(v))
            else:
                return node

    def parse_scalar(self):
        kind, val, pos = self.take()
        sign = 1
        if kind == "sym" and val == "-":
            sign = -1
            kind, val, pos = self.take()
        if kind != "nat":
            raise ExprSyntaxError("expected a number", pos)
        num = int(val)
        den = 1
        k, v, _ = self.peek()
        if k == "sym" and v == "/":
            self.take()
            k, v, p = self.take()
            if k != "nat":
                raise ExprSyntaxError("expected a denominator", p)
            den = int(v)
        return ScalarLiteral(Fraction(sign * num, den))

    def parse_primary(self):
        kind, val, pos = self.take()
        if kind == "ident":
            k, v, _ = self.peek()
            if k == "sym" and v == "[":
                self.take()
                k, v, p = self.take()
                if k != "nat":
                    raise ExprSyntaxError("expected an edge index", p)
                self.expect_sym("]")
                return Ident(val, int(v))
            return Ident(val)
        if kind == "sym" and val == "(":
            inner = self.parse_expr()
            self.expect_sym(")")
            return inner
        raise ExprSyntaxError(f"expected an identifier, number or '('", pos)


def parse_expr(text: str) -> object:
    tokens = _tokenize(text)
    if not tokens:
        raise ExprSyntaxError("empty expression", 0)
    parser = _Parser(tokens, len(text))
    node = parser.parse_expr()
    kind, _, pos = parser.peek()
    if kind is not None:
        raise ExprSyntaxError("trailing input", pos)
    return node


# -- evaluation ----------------------------------------------------------------

def _resolve_ident(g: Graph, node: Ident) -> algebra.Element:
    if node.index is None:
        if node.name in g._out:
            return algebra.vertex_element(g, node.name)
        b = g._by_id.get(node.name)
        if b is None:
            raise UnknownIdent(f"{node.name!r} names no vertex or bundle")
        if b.mult is OMEGA:
            raise OmegaBundleNeedsIndex(
                f"omega bundle {b.id!r} needs an index: {b.id}[k]")
        if b.mult != 1:
            raise BundleNeedsIndex(
                f"bundle {b.id!r} has multiplicity {b.mult}; write {b.id}[k]")
        return algebra.edge_element(g, EdgeRef(b.id, 0))
    b = g._by_id.get(node.name)
    if b is None:
        raise UnknownIdent(f"{node.name!r} names no bundle")
    e = EdgeRef(b.id, node.index)
    if not g.is_edge(e):
        raise UnknownIdent(
            f"index {node.index} out of range for bundle {b.id!r}")
    return algebra.edge_element(g, e)


def eval_expr(node, g: Graph) -> algebra.Element:
    """Evaluate an AST to a normal-form element.  Scalars occurring as
    standalone factors scale the product; a purely scalar expression is a
    multiple of the identity."""
    coeff, elem = _eval(node, g)
    if elem is None:
        return algebra.identity_element(g).scale(coeff)
    return elem.scale(coeff)


def _eval(node, g: Graph):
    """Returns (coefficient, Element | None); None means the scalar
    multiple of the (implicit) identity."""
    if isinstance(node, ScalarLiteral):
        return node.value, None
    if isinstance(node, Ident):
        return Fraction(1), _resolve_ident(g, node)
    if isinstance(node, Star):
        coeff, elem = _eval(node.inner, g)
        return coeff, (None if elem is None else elem.involution())
    if isinstance(node, Power):
        coeff, elem = _eval(node.inner, g)
        if node.exponent == 0:
            return Fraction(1), algebra.identity_element(g)
        if elem is None:
            return coeff ** node.exponent, None
        out = elem
        for _ in range(node.exponent - 1):
            out = out * elem
        return coeff ** node.exponent, out
    if isinstance(node, Product):
        coeff = Fraction(1)
        elem = None
        for factor in node.factors:
            c, e = _eval(factor, g)
            coeff *= c
            if e is not None:
                elem = e if elem is None else elem * e
        return coeff, elem
    if isinstance(node, Sum):
        total = None
        for sign, part in node.parts:
            c, e = _eval(part, g)
            piece = (algebra.identity_element(g) if e is None else e).scale(sign * c)
            total = piece if total is None else total + piece
        return Fraction(1), total
    raise TypeError(f"not an expression node: {node!r}")
