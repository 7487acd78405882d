"""Exact arithmetic in Q(i, s) with s**2 = p for a nonzero Gaussian rational p.

A :class:`FieldContext` fixes the radicand ``p``.  When ``p`` is already a
square in Q(i) the extension collapses and ``s`` is identified with the
canonical root (positive real part, or positive imaginary part when the
real part vanishes).  Elements are :class:`Scalar` values with coordinates
in the basis ``1, i, s, i*s``; they are normalized after every operation
so equality is coordinate equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from math import isqrt

from gmpy2 import mpq

__all__ = [
    "FieldContext",
    "Scalar",
    "make_field",
    "gaussian",
    "parse_gaussian",
    "render_rational",
]

_ZERO = mpq(0)
_ONE = mpq(1)


def _q(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def render_rational(q) -> str:
    q = _q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _rational_sqrt(q: mpq):
    """Exact square root of a non-negative rational, or None."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return mpq(rn, rd)
    return None


def _gaussian_sqrt(a: mpq, b: mpq):
    """Canonical square root of a + b*i inside Q(i), or None."""
    if a == 0 and b == 0:
        return (_ZERO, _ZERO)
    r = _rational_sqrt(a * a + b * b)
    if r is None:
        return None
    x = _rational_sqrt((a + r) / 2)
    y = _rational_sqrt((r - a) / 2)
    if x is None or y is None:
        return None
    # 2xy = b fixes the relative sign
    if b < 0:
        y = -y
    if x == 0 and y < 0:
        y = -y
    assert x * x - y * y == a and 2 * x * y == b
    return (x, y)


@dataclass(frozen=True)
class FieldContext:
    """The field Q(i, sqrt(p)).  Build with :func:`make_field`."""

    p_re: mpq
    p_im: mpq
    root: tuple | None = dc_field(default=None, compare=False)

    @property
    def degree(self) -> int:
        return 1 if self.root is not None else 2

    @property
    def p(self) -> "Scalar":
        return Scalar(self, self.p_re, self.p_im)

    @cached_property
    def zero(self) -> "Scalar":
        return Scalar(self)

    @cached_property
    def one(self) -> "Scalar":
        return Scalar(self, _ONE)

    @cached_property
    def i(self) -> "Scalar":
        return Scalar(self, _ZERO, _ONE)

    @cached_property
    def s(self) -> "Scalar":
        if self.root is not None:
            return Scalar(self, self.root[0], self.root[1])
        return Scalar(self, _ZERO, _ZERO, _ONE)

    def __call__(self, x) -> "Scalar":
        """Coerce an int, Fraction, mpq or Scalar into this field."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise ValueError(f"scalar from {x.field} used in {self}")
            return x
        return Scalar(self, _q(x))

    def gaussian(self, re, im=0) -> "Scalar":
        return Scalar(self, _q(re), _q(im))

    def sqrt(self, x) -> "Scalar":
        """Square root of a Gaussian-rational element, if it lies in this field.

        Returns the canonical root when ``x`` is a square in Q(i), otherwise
        ``q*s`` with ``q`` the canonical root of ``x/p``.
        """
        x = self(x) if not isinstance(x, Scalar) else x
        if not x.is_gaussian():
            raise ValueError("sqrt is only defined here for Gaussian-rational arguments")
        a, b = x.c[0], x.c[1]
        r = _gaussian_sqrt(a, b)
        if r is not None:
            return Scalar(self, r[0], r[1])
        if self.root is None:
            # x / p in Q(i)
            ratio = x / self.p
            r = _gaussian_sqrt(ratio.c[0], ratio.c[1])
            if r is not None:
                return Scalar(self, r[0], r[1]) * self.s
        raise ValueError(f"sqrt({x}) does not lie in {self}")

    def has_sqrt(self, x) -> bool:
        try:
            self.sqrt(x)
        except ValueError:
            return False
        return True

    def __str__(self) -> str:
        return f"Q(i, sqrt({gaussian_str(self.p_re, self.p_im)}))"


def gaussian_str(a, b) -> str:
    a, b = _q(a), _q(b)
    if b == 0:
        return render_rational(a)
    ib = "i" if b == 1 else "-i" if b == -1 else f"{render_rational(b)}*i"
    if a == 0:
        return ib
    if b < 0:
        ib = ib[1:] if ib.startswith("-") else ib
        return f"{render_rational(a)} - {ib}"
    return f"{render_rational(a)} + {ib}"


def gaussian(re, im=0) -> tuple:
    return (_q(re), _q(im))


_FIELDS: dict = {}


def make_field(p) -> FieldContext:
    """Field context for radicand ``p`` (int, Fraction, str, or (re, im) pair)."""
    if isinstance(p, str):
        p = parse_gaussian(p)
    if isinstance(p, Scalar):
        if not p.is_gaussian():
            raise ValueError("radicand must be a Gaussian rational")
        p = (p.c[0], p.c[1])
    if not isinstance(p, tuple):
        p = (p, 0)
    re, im = _q(p[0]), _q(p[1])
    if re == 0 and im == 0:
        raise ValueError("p must be nonzero")
    key = (re, im)
    ctx = _FIELDS.get(key)
    if ctx is None:
        ctx = FieldContext(re, im, _gaussian_sqrt(re, im))
        _FIELDS[key] = ctx
    return ctx


def parse_gaussian(text: str) -> tuple:
    """Parse text such as ``-1``, ``3/2``, ``1 + 2*i`` into an (re, im) pair."""
    from .parsing import parse_constant

    x = parse_constant(text, make_field(1))
    return (x.c[0], x.c[1])


class Scalar:
    """Element c0 + c1*i + c2*s + c3*i*s of a :class:`FieldContext`."""

    __slots__ = ("field", "c")

    def __init__(self, field: FieldContext, c0=_ZERO, c1=_ZERO, c2=_ZERO, c3=_ZERO):
        self.field = field
        self.c = (mpq(c0), mpq(c1), mpq(c2), mpq(c3))

    @classmethod
    def _raw(cls, field, c):
        obj = object.__new__(cls)
        obj.field = field
        obj.c = c
        return obj

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field and other.field != self.field:
                raise ValueError(f"mixed fields {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)) or type(other).__name__ == "mpq":
            return Scalar._raw(self.field, (_q(other), _ZERO, _ZERO, _ZERO))
        return None

    # -- predicates -----------------------------------------------------
    def __bool__(self) -> bool:
        c = self.c
        return bool(c[0] or c[1] or c[2] or c[3])

    def is_gaussian(self) -> bool:
        return not (self.c[2] or self.c[3])

    def is_rational(self) -> bool:
        c = self.c
        return not (c[1] or c[2] or c[3])

    def rational(self) -> mpq:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if not isinstance(other, Scalar) else other
        if o is None:
            return NotImplemented
        return self.c == o.c and (o.field is self.field or o.field == self.field)

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.c[0])
        return hash(self.c)

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        a, b, c, d = self.c
        return Scalar._raw(self.field, (-a, -b, -c, -d))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        x, y = self.c, o.c
        return Scalar._raw(self.field, (x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        x, y = self.c, o.c
        return Scalar._raw(self.field, (x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3]))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.c
        e, f, g, h = o.c
        F = self.field
        if not (c or d or g or h):
            if not (b or f):
                return Scalar._raw(F, (a * e, _ZERO, _ZERO, _ZERO))
            return Scalar._raw(F, (a * e - b * f, a * f + b * e, _ZERO, _ZERO))
        # (u1 + v1 s)(u2 + v2 s) = u1 u2 + v1 v2 p + (u1 v2 + v1 u2) s
        ur = a * e - b * f
        ui = a * f + b * e
        wr = c * g - d * h
        wi = c * h + d * g
        pr, pi = F.p_re, F.p_im
        ur += wr * pr - wi * pi
        ui += wr * pi + wi * pr
        vr = a * g - b * h + c * e - d * f
        vi = a * h + b * g + c * f + d * e
        return Scalar._raw(F, (ur, ui, vr, vi))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("division by zero scalar")
        a, b, c, d = self.c
        F = self.field
        if not (c or d):
            n = a * a + b * b
            return Scalar._raw(F, (a / n, -b / n, _ZERO, _ZERO))
        # (u + v s)^-1 = (u - v s) / (u^2 - v^2 p)
        conj = Scalar._raw(F, (a, b, -c, -d))
        norm = self * conj
        assert norm.is_gaussian()
        return conj * norm.inverse()

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            q = o.c[0]
            if q == 0:
                raise ZeroDivisionError("division by zero scalar")
            a, b, c, d = self.c
            return Scalar._raw(self.field, (a / q, b / q, c / q, d / q))
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- text -----------------------------------------------------------
    def __str__(self) -> str:
        parts = []
        for coeff, unit in zip(self.c, ("", "i", "s", "i*s")):
            if coeff == 0:
                continue
            mag = abs(coeff)
            if unit and mag == 1:
                body = unit
            elif unit:
                body = f"{render_rational(mag)}*{unit}"
            else:
                body = render_rational(mag)
            parts.append(("-" if coeff < 0 else "+", body))
        if not parts:
            return "0"
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Scalar({self})"
