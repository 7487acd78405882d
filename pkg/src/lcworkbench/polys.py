"""Sparse polynomials in D (the derivation), L (lambda) and M (mu) over a FieldContext."""

from __future__ import annotations

from math import factorial

from .scalars import FieldContext, Scalar

__all__ = ["Poly", "VARS", "var_index"]

VARS = ("D", "L", "M")
_VAR_ALIASES = {"D": 0, "d": 0, "∂": 0, "L": 1, "lambda": 1, "λ": 1, "M": 2, "mu": 2, "μ": 2}


def var_index(var) -> int:
    if isinstance(var, int):
        if var not in (0, 1, 2):
            raise ValueError(f"bad variable index {var}")
        return var
    try:
        return _VAR_ALIASES[var]
    except KeyError:
        raise ValueError(f"unknown variable {var!r}") from None


def _bump(e, v, k):
    if v == 0:
        return (e[0] + k, e[1], e[2])
    if v == 1:
        return (e[0], e[1] + k, e[2])
    return (e[0], e[1], e[2] + k)


class Poly:
    """Immutable sparse polynomial; ``terms`` maps (dD, dL, dM) to nonzero Scalars."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field: FieldContext, terms=None):
        self.field = field
        clean = {}
        if terms:
            for e, c in terms.items():
                c = field(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, field, terms):
        obj = object.__new__(cls)
        obj.field = field
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, field):
        return cls._raw(field, {})

    @classmethod
    def const(cls, field, c):
        c = field(c)
        return cls._raw(field, {(0, 0, 0): c} if c else {})

    @classmethod
    def var(cls, field, v, power: int = 1):
        return cls._raw(field, {_bump((0, 0, 0), var_index(v), power): field.one})

    @classmethod
    def monomial(cls, field, exps, c=1):
        c = field(c)
        return cls._raw(field, {tuple(exps): c} if c else {})

    @classmethod
    def linear(cls, field, d=0, l=0, m=0, c=0):
        """d*D + l*L + m*M + c."""
        t = {}
        for e, x in (((1, 0, 0), d), ((0, 1, 0), l), ((0, 0, 1), m), ((0, 0, 0), c)):
            x = field(x)
            if x:
                t[e] = x
        return cls._raw(field, t)

    # -- predicates -----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        t = self.terms
        return not t or (len(t) == 1 and (0, 0, 0) in t)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0, 0, 0), self.field.zero)

    def degree(self, var=None) -> int:
        """Total degree, or degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        v = var_index(var)
        return max(e[v] for e in self.terms)

    def involves(self, var) -> bool:
        v = var_index(var)
        return any(e[v] for e in self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Scalar)):
            return self == Poly.const(self.field, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("polynomials over different fields")
            return other
        try:
            return Poly.const(self.field, other)
        except (TypeError, ValueError):
            return None

    def __neg__(self):
        return Poly._raw(self.field, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        if not self.terms:
            return o
        t = dict(self.terms)
        for e, c in o.terms.items():
            x = t.get(e)
            if x is None:
                t[e] = c
            else:
                x = x + c
                if x:
                    t[e] = x
                else:
                    del t[e]
        return Poly._raw(self.field, t)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, Poly):
            o = other
        else:
            try:
                c = self.field(other)
            except (TypeError, ValueError):
                return NotImplemented
            return self.scale(c)
        a, b = self.terms, o.terms
        if not a or not b:
            return Poly._raw(self.field, {})
        if len(a) < len(b):
            a, b = b, a
        t = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                x = t.get(e)
                t[e] = c1 * c2 if x is None else x + c1 * c2
        return Poly._raw(self.field, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = self.field(c)
        if not c:
            return Poly._raw(self.field, {})
        if c == 1:
            return self
        return Poly._raw(self.field, {e: x * c for e, x in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = Poly.const(self.field, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- substitution ---------------------------------------------------
    def substitute(self, var, image: "Poly") -> "Poly":
        """Replace ``var`` by ``image`` everywhere and expand."""
        v = var_index(var)
        image = self._coerce(image)
        powers = [Poly.const(self.field, 1)]
        groups: dict = {}
        for e, c in self.terms.items():
            k = e[v]
            rest = _bump(e, v, -k)
            groups.setdefault(k, {})[rest] = c
        out = Poly._raw(self.field, {})
        for k in sorted(groups):
            while len(powers) <= k:
                powers.append(powers[-1] * image)
            out = out + Poly._raw(self.field, groups[k]) * powers[k]
        return out

    def substitute_many(self, images: dict) -> "Poly":
        """Simultaneous substitution {var: image}; unnamed variables stay put."""
        imgs = [None, None, None]
        for var, im in images.items():
            imgs[var_index(var)] = self._coerce(im)
        base = [Poly.var(self.field, v) if imgs[v] is None else imgs[v] for v in range(3)]
        cache = [[Poly.const(self.field, 1)] for _ in range(3)]

        def power(v, k):
            lst = cache[v]
            while len(lst) <= k:
                lst.append(lst[-1] * base[v])
            return lst[k]

        out = Poly._raw(self.field, {})
        for e, c in self.terms.items():
            term = Poly.const(self.field, c)
            for v in range(3):
                if e[v]:
                    term = term * power(v, e[v])
            out = out + term
        return out

    def coefficient(self, var, k: int) -> "Poly":
        """Plain coefficient of var**k, as a polynomial in the other variables."""
        v = var_index(var)
        t = {}
        for e, c in self.terms.items():
            if e[v] == k:
                t[_bump(e, v, -k)] = c
        return Poly._raw(self.field, t)

    def coefficient_extract(self, var, k: int) -> "Poly":
        """k! times the coefficient of var**k (the divided-power coefficient)."""
        return self.coefficient(var, k).scale(factorial(k))

    def coefficients(self, var) -> dict:
        """{k: coefficient of var**k} for every k that occurs."""
        v = var_index(var)
        out: dict = {}
        for e, c in self.terms.items():
            out.setdefault(e[v], {})[_bump(e, v, -e[v])] = c
        return {k: Poly._raw(self.field, t) for k, t in sorted(out.items())}

    # -- univariate in D ----------------------------------------------
    def is_univariate_D(self) -> bool:
        return all(e[1] == 0 and e[2] == 0 for e in self.terms)

    def leading_D(self) -> Scalar:
        d = self.degree(0)
        return self.terms[(d, 0, 0)]

    def divmod_D(self, other: "Poly"):
        """Euclidean division in F[D]; both operands must be univariate in D."""
        if not other.terms:
            raise ZeroDivisionError("polynomial division by zero")
        if not (self.is_univariate_D() and other.is_univariate_D()):
            raise ValueError("divmod_D needs univariate polynomials in D")
        F = self.field
        db = other.degree(0)
        inv = other.terms[(db, 0, 0)].inverse()
        rem = dict(self.terms)
        quo = {}
        while rem:
            dr = max(e[0] for e in rem)
            if dr < db:
                break
            c = rem[(dr, 0, 0)] * inv
            shift = dr - db
            quo[(shift, 0, 0)] = c
            for (k, _, _), bc in other.terms.items():
                e = (k + shift, 0, 0)
                x = rem.get(e, F.zero) - c * bc
                if x:
                    rem[e] = x
                else:
                    rem.pop(e, None)
        return Poly._raw(F, quo), Poly._raw(F, rem)

    def monic_D(self) -> "Poly":
        return self.scale(self.leading_D().inverse())

    def eval_D(self, value) -> Scalar:
        """Evaluate a D-univariate polynomial at D = value."""
        value = self.field(value)
        out = self.field.zero
        for (k, _, _), c in self.terms.items():
            out = out + c * value ** k
        return out

    # -- text -----------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            s = f"({c})"
            for name, k in zip(VARS, e):
                if k == 1:
                    s += f"*{name}"
                elif k:
                    s += f"*{name}^{k}"
            parts.append(s)
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self})"
