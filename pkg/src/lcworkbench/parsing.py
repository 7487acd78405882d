"""Small recursive-descent parser for scalars, polynomials and linear combinations.

Grammar::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := ('+' | '-') unary | power
    power := atom ('^' INT)?
    atom  := NUMBER | IDENT | '(' expr ')'

Built-in identifiers: ``i`` (sqrt(-1)), ``s`` (sqrt(p)), ``D``, ``L``, ``M``.
Any other identifier is handed to a resolver which maps it to a basis key;
the result is then a linear combination {key: Poly}.  Division is only
allowed by nonzero constants.
"""

from __future__ import annotations

import re

from .polys import Poly
from .scalars import FieldContext, Scalar

__all__ = ["ParseError", "parse_combination", "parse_poly", "parse_constant"]


class ParseError(ValueError):
    pass


_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+)"
    r"|(?P<sym>[A-Za-z][A-Za-z0-9]*[+-]_\d+)"
    r"|(?P<id>[A-Za-z][A-Za-z0-9_']*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)

_BUILTIN_VARS = {"D": 0, "L": 1, "M": 2}


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        pos = m.end()
        kind = m.lastgroup
        out.append((kind if kind != "sym" else "id", m.group(kind)))
    return out


class _Parser:
    def __init__(self, text, field, resolver):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0
        self.F = field
        self.resolver = resolver

    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.k += 1
        return t

    def expect(self, value):
        kind, v = self.take()
        if v != value:
            raise ParseError(f"expected {value!r} in {self.text!r}")

    # values are dicts {key or None: Poly}
    def const(self, poly):
        return {None: poly} if poly else {}

    def add(self, x, y, sign=1):
        out = dict(x)
        for key, p in y.items():
            q = out.get(key)
            q = (p if sign > 0 else -p) if q is None else (q + p if sign > 0 else q - p)
            if q:
                out[key] = q
            else:
                out.pop(key, None)
        return out

    def mul(self, x, y):
        xs = [k for k in x if k is not None]
        ys = [k for k in y if k is not None]
        if xs and ys:
            raise ParseError(f"product of two basis elements in {self.text!r}")
        if ys:
            x, y = y, x
        c = y.get(None)
        if c is None:
            return {}
        out = {}
        for key, p in x.items():
            q = p * c
            if q:
                out[key] = q
        return out

    def parse(self):
        v = self.expr()
        if self.k != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            v = self.add(v, self.term(), 1 if op == "+" else -1)
        return v

    def term(self):
        v = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                v = self.mul(v, rhs)
            else:
                if set(rhs) - {None} or not rhs.get(None, Poly.zero(self.F)).is_constant():
                    raise ParseError(f"division by a non-constant in {self.text!r}")
                c = rhs.get(None)
                if c is None or not c:
                    raise ZeroDivisionError(f"division by zero in {self.text!r}")
                inv = c.constant_value().inverse()
                v = {key: p.scale(inv) for key, p in v.items()}
        return v

    def unary(self):
        op = self.peek()[1]
        if op == "-":
            self.take()
            return {key: -p for key, p in self.unary().items()}
        if op == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, n = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            if set(v) - {None}:
                raise ParseError(f"power of a basis element in {self.text!r}")
            v = self.const(v.get(None, Poly.zero(self.F)) ** int(n))
        return v

    def atom(self):
        kind, v = self.take()
        F = self.F
        if kind == "num":
            return self.const(Poly.const(F, int(v)))
        if v == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "id":
            if v == "i":
                return self.const(Poly.const(F, F.i))
            if v == "s":
                return self.const(Poly.const(F, F.s))
            if v in _BUILTIN_VARS:
                return self.const(Poly.var(F, _BUILTIN_VARS[v]))
            if self.resolver is None:
                raise ParseError(f"unknown identifier {v!r}")
            key = self.resolver(v)
            if key is None:
                raise ParseError(f"unknown identifier {v!r}")
            return {key: Poly.const(F, 1)}
        raise ParseError(f"unexpected token {v!r} in {self.text!r}")


def parse_combination(text: str, field: FieldContext, resolver=None) -> dict:
    """Parse into {key: Poly}; the key None holds the pure polynomial part."""
    return _Parser(str(text), field, resolver).parse()


def parse_poly(text: str, field: FieldContext) -> Poly:
    v = parse_combination(text, field)
    return v.get(None, Poly.zero(field))


def parse_constant(text, field: FieldContext) -> Scalar:
    if isinstance(text, (int,)):
        return field(text)
    p = parse_poly(str(text), field)
    if not p.is_constant():
        raise ParseError(f"{text!r} is not a constant")
    return p.constant_value()
