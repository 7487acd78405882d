"""Finitely presented Lie conformal superalgebras and their axiom checkers.

An algebra is a free F[D]-module on a finite list of :class:`BasisSymbol`
with a lambda-bracket table on ordered basis pairs.  Elements and bracket
values are :class:`Combination` objects mapping symbols to polynomials.
Sesquilinearity is built into :meth:`ConformalSuperalgebra.bracket`; the
skew-symmetry and Jacobi checks run over all basis pairs and triples.
"""

from __future__ import annotations

from dataclasses import dataclass

from .polys import Poly
from .scalars import FieldContext

__all__ = [
    "BasisSymbol",
    "Combination",
    "ConformalSuperalgebra",
    "Report",
    "FAMILY_PARITY",
]

FAMILY_ORDER = {"L": 0, "J": 1, "G+": 2, "G-": 3}
FAMILY_PARITY = {"L": 0, "J": 0, "G+": 1, "G-": 1}


@dataclass(frozen=True)
class BasisSymbol:
    family: str
    index: int
    parity: int

    @property
    def name(self) -> str:
        return f"{self.family}_{self.index}"

    @property
    def sort_key(self):
        return (self.index, FAMILY_ORDER.get(self.family, 9), self.family)

    def __str__(self):
        return self.name

    def __repr__(self):
        return self.name


class Combination(dict):
    """Finite sum of Poly * key (keys are basis symbols or module generators)."""

    @classmethod
    def of(cls, key, poly):
        out = cls()
        if poly:
            out[key] = poly
        return out

    def add_term(self, key, poly):
        """In-place accumulate; used by the checkers' inner loops."""
        if not poly:
            return self
        q = self.get(key)
        if q is None:
            self[key] = poly
        else:
            q = q + poly
            if q:
                self[key] = q
            else:
                del self[key]
        return self

    def __add__(self, other):
        out = Combination(self)
        for k, p in other.items():
            out.add_term(k, p)
        return out

    def __sub__(self, other):
        out = Combination(self)
        for k, p in other.items():
            out.add_term(k, -p)
        return out

    def __neg__(self):
        return Combination({k: -p for k, p in self.items()})

    def times(self, poly) -> "Combination":
        out = Combination()
        for k, p in self.items():
            out.add_term(k, p * poly)
        return out

    def map_coefficients(self, fn) -> "Combination":
        out = Combination()
        for k, p in self.items():
            out.add_term(k, fn(p))
        return out

    def is_zero(self):
        return not self

    def sorted_items(self):
        return sorted(self.items(), key=lambda kv: kv[0].sort_key)

    def __str__(self):
        if not self:
            return "0"
        parts = []
        for k, p in self.sorted_items():
            # single terms already carry their own parentheses
            parts.append(f"{p}*{k.name}" if len(p.terms) == 1 else f"({p})*{k.name}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Combination({self})"


class Report:
    """Outcome of a checker: counts and the failing entries."""

    def __init__(self, check: str, subject: str):
        self.check = check
        self.subject = subject
        self.checked = 0
        self.failures: list = []
        self.info: dict = {}

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, where, residual, **extra):
        entry = {"cell": list(where), "residual": str(residual), "pass": False}
        entry.update(extra)
        self.failures.append(entry)

    def to_dict(self):
        out = {
            "check": self.check,
            "subject": self.subject,
            "checked": self.checked,
            "failures": self.failures,
            "pass": self.passed,
        }
        if self.info:
            out["info"] = self.info
        return out

    def __repr__(self):
        state = "pass" if self.passed else f"{len(self.failures)} failures"
        return f"<Report {self.check} on {self.subject}: {self.checked} checked, {state}>"


class ConformalSuperalgebra:
    def __init__(self, context: FieldContext, basis, table, degree=None, name="", meta=None,
                 validate=True):
        self.context = context
        self.basis = list(basis)
        self.index = {b: k for k, b in enumerate(self.basis)}
        self.by_name = {b.name: b for b in self.basis}
        if len(self.by_name) != len(self.basis):
            raise ValueError("duplicate basis symbols")
        self.table = {}
        for key, val in table.items():
            val = Combination({s: p for s, p in val.items() if p})
            if val:
                self.table[key] = val
        self.degree = dict(degree) if degree is not None else None
        self.name = name
        self.meta = dict(meta or {})
        self._cache: dict = {}
        if validate:
            self.validate()

    # -- construction helpers ------------------------------------------
    def validate(self):
        for (a, b), val in self.table.items():
            for x in (a, b):
                if x not in self.index:
                    raise ValueError(f"table uses unknown symbol {x}")
            for s, p in val.items():
                if s not in self.index:
                    raise ValueError(f"bracket [{a} {b}] produces unknown symbol {s}")
                if s.parity != (a.parity + b.parity) % 2:
                    raise ValueError(f"parity violation in [{a} lambda {b}] at {s}")
                if self.degree is not None and self.degree[s] != self.degree[a] + self.degree[b]:
                    raise ValueError(f"grading violation in [{a} lambda {b}] at {s}")
                if p.involves("M"):
                    raise ValueError(f"bracket [{a} lambda {b}] involves mu")

    def with_entry(self, a, b, value, name=None) -> "ConformalSuperalgebra":
        """Copy with one ordered table entry replaced (used to inject defects)."""
        a, b = self.symbol(a), self.symbol(b)
        table = dict(self.table)
        table[(a, b)] = Combination(value)
        return ConformalSuperalgebra(self.context, self.basis, table, self.degree,
                                     name or self.name + "*", self.meta, validate=False)

    def symbol(self, x) -> BasisSymbol:
        if isinstance(x, BasisSymbol):
            if x not in self.index:
                raise KeyError(f"symbol {x} not in basis of {self.name}")
            return x
        try:
            return self.by_name[x]
        except KeyError:
            raise KeyError(f"symbol {x!r} not in basis of {self.name}") from None

    def element(self, x) -> Combination:
        """Coerce a symbol, name, Combination or expression string to an element."""
        if isinstance(x, Combination):
            for s in x:
                self.symbol(s)
            return x
        if isinstance(x, (BasisSymbol,)) or (isinstance(x, str) and x in self.by_name):
            return Combination.of(self.symbol(x), Poly.const(self.context, 1))
        if isinstance(x, str):
            from .parsing import parse_combination

            val = parse_combination(x, self.context, self.by_name.get)
            if None in val:
                raise ValueError(f"{x!r} has a part without a basis symbol")
            return Combination(val)
        raise TypeError(f"cannot interpret {x!r} as an element of {self.name}")

    def entry(self, a, b) -> Combination:
        return self.table.get((a, b), Combination())

    # -- brackets -------------------------------------------------------
    def bracket(self, x, y) -> Combination:
        """[x lambda y] for elements with D-only coefficients."""
        x, y = self.element(x), self.element(y)
        F = self.context
        D, Lam = Poly.var(F, 0), Poly.var(F, 1)
        out = Combination()
        for a, f in x.items():
            if f.involves("L") or f.involves("M"):
                raise ValueError("element coefficients must only involve D")
            fa = f.substitute(0, -Lam)
            for b, g in y.items():
                val = self.table.get((a, b))
                if not val:
                    continue
                w = fa * g.substitute(0, D + Lam)
                for e, h in val.items():
                    out.add_term(e, w * h)
        return out

    lambda_bracket = bracket

    def k_products(self, a, b):
        """Nonzero a_(k) b as [(k, Combination)], via divided-power extraction."""
        a, b = self.symbol(a), self.symbol(b)
        val = self.entry(a, b)
        out = {}
        for e, p in val.items():
            for k, c in p.coefficients("L").items():
                c = c.scale(_fact(k))
                out.setdefault(k, Combination()).add_term(e, c)
        return [(k, out[k]) for k in sorted(out) if out[k]]

    # -- cached substituted tables --------------------------------------
    def _variant(self, tag, fn):
        key = ("variant", tag)
        cached = self._cache.get(key)
        if cached is None:
            cached = {}
            for ab, val in self.table.items():
                cached[ab] = [(e, fn(p)) for e, p in val.items()]
            cached = {ab: [(e, p) for e, p in v if p] for ab, v in cached.items()}
            self._cache[key] = cached
        return cached

    def _vars(self):
        F = self.context
        return Poly.var(F, 0), Poly.var(F, 1), Poly.var(F, 2)

    # -- checkers -------------------------------------------------------
    def check_skew_symmetry(self) -> Report:
        rep = Report("skew-symmetry", self.name)
        D, Lam, _ = self._vars()
        for a in self.basis:
            for b in self.basis:
                rep.checked += 1
                res = Combination(self.entry(a, b))
                sign = -1 if a.parity and b.parity else 1
                for e, p in self.entry(b, a).items():
                    q = p.substitute(1, -Lam - D)
                    res.add_term(e, q if sign > 0 else -q)
                if res:
                    rep.fail((a.name, b.name), res)
        return rep

    def check_jacobi(self, triples=None) -> Report:
        """[a_L [b_M c]] = [[a_L b]_{L+M} c] + sign [b_M [a_L c]] on basis triples."""
        rep = Report("jacobi", self.name)
        D, Lam, Mu = self._vars()
        t_plain = self.table
        t_mu = self._variant("mu", lambda p: p.substitute(1, Mu))
        t_lm = self._variant("lm", lambda p: p.substitute(1, Lam + Mu))
        # coefficient transforms of inner brackets
        lhs_coef = self._variant("lhs", lambda p: p.substitute(1, Mu).substitute(0, D + Lam))
        rhs1_coef = self._variant("rhs1", lambda p: p.substitute(0, -Lam - Mu))
        rhs2_coef = self._variant("rhs2", lambda p: p.substitute(0, D + Mu))
        basis = self.basis if triples is None else None
        it = triples if triples is not None else (
            (a, b, c) for a in basis for b in basis for c in basis)
        for a, b, c in it:
            a, b, c = self.symbol(a), self.symbol(b), self.symbol(c)
            rep.checked += 1
            res = Combination()
            # [a_L [b_M c]] : inner h(D, M) d  ->  h(D+L, M) [a_L d]
            for d, h in lhs_coef.get((b, c), ()):
                for e, p in t_plain.get((a, d), {}).items():
                    res.add_term(e, h * p)
            # [[a_L b]_{L+M} c] : g(D, L) e -> g(-L-M, L) [e_{L+M} c]
            for e, g in rhs1_coef.get((a, b), ()):
                for f, p in t_lm.get((e, c), ()):
                    res.add_term(f, -(g * p))
            # sign [b_M [a_L c]] : h(D, L) e -> h(D+M, L) [b_M e]
            sign = -1 if a.parity and b.parity else 1
            for e, h in rhs2_coef.get((a, c), ()):
                for f, p in t_mu.get((b, e), ()):
                    q = h * p
                    res.add_term(f, -q if sign > 0 else q)
            if res:
                rep.fail((a.name, b.name, c.name), res)
        return rep

    def check_axioms(self) -> dict:
        return {"skew": self.check_skew_symmetry(), "jacobi": self.check_jacobi()}

    def __repr__(self):
        return f"<ConformalSuperalgebra {self.name} rank {len(self.basis)} over {self.context}>"


def _fact(k):
    out = 1
    for j in range(2, k + 1):
        out *= j
    return out
