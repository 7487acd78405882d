"""Free conformal modules of finite rank and the catalog families.

A module is a free F[D]-module on a list of :class:`Generator` together
with an action table ``(symbol, generator) -> Combination`` whose
coefficients are polynomials in D and L (for the action variable lambda).
The one-dimensional trivial modules C c_a are the only non-free objects;
they carry ``torsion = a`` (D acts as the scalar a) and zero actions.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .conformal import Combination, ConformalSuperalgebra, Report
from .polys import Poly

__all__ = [
    "Generator",
    "ConformalModule",
    "build_module",
    "reverse_parity",
    "MODULE_FAMILIES",
]

MODULE_FAMILIES = ("trivial", "V1", "V2", "V22")


@dataclass(frozen=True)
class Generator:
    name: str
    parity: int
    order: int = dc_field(default=0, compare=False)

    @property
    def sort_key(self):
        return (self.order, self.name)

    def __str__(self):
        return self.name

    def __repr__(self):
        return self.name


class ConformalModule:
    """Action table over ``algebra``; absent entries act by zero."""

    def __init__(self, algebra: ConformalSuperalgebra, generators, actions, *, family="custom",
                 params=None, reversed=False, torsion=None, name=None, validate=True):
        self.algebra = algebra
        self.context = algebra.context
        self.generators = [Generator(g.name, g.parity, k) for k, g in enumerate(generators)]
        self.by_name = {g.name: g for g in self.generators}
        if len(self.by_name) != len(self.generators):
            raise ValueError("duplicate generator names")
        remap = {g.name: g for g in self.generators}
        self.actions = {}
        for (a, v), val in actions.items():
            a = algebra.symbol(a)
            v = remap[v.name if isinstance(v, Generator) else v]
            out = Combination()
            for w, poly in val.items():
                wn = w.name if isinstance(w, Generator) else w
                if wn not in remap:
                    raise ValueError(f"action {a} on {v} produces unknown generator {wn}")
                out.add_term(remap[wn], poly)
            if out:
                self.actions[(a, v)] = out
        self.family = family
        self.params = dict(params or {})
        self.reversed = reversed
        self.torsion = torsion
        self.name = name or family
        if validate:
            self.validate()

    @property
    def rank(self):
        even = sum(1 for g in self.generators if g.parity == 0)
        return (even, len(self.generators) - even)

    @property
    def is_trivial(self):
        return self.torsion is not None

    def validate(self):
        for (a, v), val in self.actions.items():
            for w, poly in val.items():
                if w.parity != (a.parity + v.parity) % 2:
                    raise ValueError(f"parity violation in {a} lambda {v} at {w}")
                if poly.involves("M"):
                    raise ValueError(f"action {a} lambda {v} involves mu")

    def generator(self, x) -> Generator:
        if isinstance(x, Generator):
            return self.by_name[x.name]
        try:
            return self.by_name[x]
        except KeyError:
            raise KeyError(f"generator {x!r} not in module {self.name}") from None

    def element(self, x) -> Combination:
        """Coerce a generator, name, Combination or expression string to a module element."""
        F = self.context
        if isinstance(x, Combination):
            out = Combination()
            for g, p in x.items():
                if p.involves("L") or p.involves("M"):
                    raise ValueError("module element coefficients must only involve D")
                out.add_term(self.generator(g), p)
            return out
        if isinstance(x, Generator) or (isinstance(x, str) and x in self.by_name):
            return Combination.of(self.generator(x), Poly.const(F, 1))
        if isinstance(x, str):
            from .parsing import parse_combination

            val = parse_combination(x, F, self.by_name.get)
            if None in val:
                raise ValueError(f"{x!r} has a part without a generator")
            return self.element(Combination(val))
        raise TypeError(f"cannot interpret {x!r} as an element of {self.name}")

    def action(self, a, v) -> Combination:
        return self.actions.get((a, v), Combination())

    def act(self, x, v) -> Combination:
        """x lambda v: D in x becomes -lambda, D in v becomes D + lambda."""
        A = self.algebra
        F = self.context
        x = A.element(x)
        v = self.element(v)
        D, Lam = Poly.var(F, 0), Poly.var(F, 1)
        out = Combination()
        for a, f in x.items():
            if f.involves("L") or f.involves("M"):
                raise ValueError("element coefficients must only involve D")
            fa = f.substitute(0, -Lam)
            for g, h in v.items():
                val = self.actions.get((a, g))
                if not val:
                    continue
                w = fa * h.substitute(0, D + Lam)
                for u, q in val.items():
                    out.add_term(u, w * q)
        return out

    def check_module_axioms(self) -> Report:
        """[a_L b]_{L+M} v = a_L (b_M v) - (-1)^{|a||b|} b_M (a_L v) on basis cells."""
        A = self.algebra
        F = self.context
        rep = Report("module-axioms", f"{self.name} over {A.name}")
        D, Lam, Mu = Poly.var(F, 0), Poly.var(F, 1), Poly.var(F, 2)
        act_mu = {k: [(w, p.substitute(1, Mu)) for w, p in v.items()] for k, v in self.actions.items()}
        act_lm = {k: [(w, p.substitute(1, Lam + Mu)) for w, p in v.items()]
                  for k, v in self.actions.items()}
        br_coef = A._variant("rhs1", lambda p: p.substitute(0, -Lam - Mu))
        for a in A.basis:
            for b in A.basis:
                sign = -1 if a.parity and b.parity else 1
                for v in self.generators:
                    rep.checked += 1
                    res = Combination()
                    for e, g in br_coef.get((a, b), ()):
                        for w, q in act_lm.get((e, v), ()):
                            res.add_term(w, g * q)
                    # a_L (b_M v): h(D, M) w -> h(D+L, M) a_L w
                    for w, h in act_mu.get((b, v), ()):
                        h2 = h.substitute(0, D + Lam)
                        for u, q in self.actions.get((a, w), {}).items():
                            res.add_term(u, -(h2 * q))
                    # b_M (a_L v): h(D, L) w -> h(D+M, L) b_M w
                    for w, h in self.actions.get((a, v), {}).items():
                        h2 = h.substitute(0, D + Mu)
                        for u, q in act_mu.get((b, w), ()):
                            res.add_term(u, h2 * q if sign > 0 else -(h2 * q))
                    if res:
                        rep.fail((a.name, b.name, v.name), res)
        return rep

    def label(self) -> str:
        return module_label(self.family, self.params, self.reversed, self.algebra)

    def __repr__(self):
        m, n = self.rank
        return f"<ConformalModule {self.name} rank ({m}+{n}) over {self.algebra.name}>"


def module_label(family, params, reversed=False, algebra=None) -> str:
    k2 = algebra is not None and algebra.meta.get("kind") == "k2"
    if family == "trivial":
        base = f"Cc({params['alpha']})"
    else:
        letter = "K" if k2 else "V"
        keys = {"V1": ("delta", "alpha"), "V2": ("delta", "alpha"),
                "V22": ("delta", "lam", "alpha")}.get(family)
        if keys is None:
            base = family
        else:
            vals = [str(params[k]) for k in keys]
            if family == "V22" and params.get("beta"):
                vals.append(str(params["beta"]))
            sup = {"V1": "(1)", "V2": "(2)", "V22": ""}[family]
            base = f"{letter}{sup}[{', '.join(vals)}]"
    return "~" + base if reversed else base


def reverse_parity(M: ConformalModule) -> ConformalModule:
    gens = [Generator(g.name, 1 - g.parity) for g in M.generators]
    by = {g.name: g for g in gens}
    acts = {(a, by[v.name]): Combination({by[w.name]: p for w, p in val.items()})
            for (a, v), val in M.actions.items()}
    name = M.name[1:] if M.name.startswith("~") else "~" + M.name
    return ConformalModule(M.algebra, gens, acts, family=M.family, params=M.params,
                           reversed=not M.reversed, torsion=M.torsion, name=name)


# -- catalog families ----------------------------------------------------

def _scalar(F, x):
    if x is None:
        return F.zero
    if isinstance(x, str):
        from .parsing import parse_constant

        return parse_constant(x, F)
    if isinstance(x, tuple):
        return F.gaussian(*x)
    return F(x)


def _p_data(A: ConformalSuperalgebra):
    """(p, sqrt p) as used in the module formulas of the ambient algebra."""
    F = A.context
    if A.meta.get("kind") == "k2":
        return F.one, F.one
    p = A.meta["p"]
    return p, F.sqrt(p)


def _sym(A, family, index):
    name = f"{family}_{index}"
    return A.by_name.get(name)


def build_module(family: str, params: dict, algebra: ConformalSuperalgebra, *,
                 parity: int = 0, force: bool = False) -> ConformalModule:
    """Catalog module over ``algebra`` (KB(p)_[n], k(n) or K2).

    ``family``: "trivial" (alpha, ``parity``), "V1"/"V2" (delta, alpha) or
    "V22" (delta, lam, alpha, optional beta).  A nonzero beta needs p = -1;
    ``force`` mounts the beta block anyway (used to exhibit the failure of
    the module axioms away from p = -1).
    """
    A = algebra
    F = A.context
    raw = dict(params or {})
    known = {"trivial": {"alpha"}, "V1": {"delta", "alpha"}, "V2": {"delta", "alpha"},
             "V22": {"delta", "lam", "alpha", "beta"}}
    if family not in known:
        raise ValueError(f"unknown module family {family!r}; expected one of {MODULE_FAMILIES}")
    extra = set(raw) - known[family]
    if extra:
        raise ValueError(f"family {family} does not take parameters {sorted(extra)}")
    P = {k: _scalar(F, raw.get(k)) for k in known[family]}
    if family == "trivial":
        gens = [Generator("c", parity % 2)]
        odd = bool(parity % 2)
        return ConformalModule(A, gens, {}, family="trivial", params=P, reversed=odd,
                               torsion=P["alpha"], name=module_label("trivial", P, odd, A))
    p, sp = _p_data(A)
    D, Lam = Poly.var(F, 0), Poly.var(F, 1)
    one = Poly.const(F, 1)
    half = F(1) / 2
    d, al = P["delta"], P["alpha"]
    L0, J0, Gp0, Gm0 = (_sym(A, f, 0) for f in ("L", "J", "G+", "G-"))

    def lin(dc, lc, c):
        return D.scale(dc) + Lam.scale(lc) + one.scale(c)

    acts = {}

    def put(a, v, w, poly):
        acts.setdefault((a, v), Combination()).add_term(w, poly)

    if family in ("V1", "V2"):
        v0, v1 = Generator("v0", 0), Generator("v1", 1)
        gens = [v0, v1]
        put(L0, v0, v0, lin(p, p * d, p * al))
        put(L0, v1, v1, lin(p, p * (d + half), p * al))
        g_long = lin(2 * sp, 2 * sp * 2 * d, 2 * sp * al)
        if family == "V1":
            put(J0, v0, v0, one.scale(-2 * d))
            put(J0, v1, v1, one.scale(1 - 2 * d))
            put(Gp0, v0, v1, one.scale(sp))
            put(Gm0, v1, v0, g_long)
        else:
            put(J0, v0, v0, one.scale(2 * d))
            put(J0, v1, v1, one.scale(2 * d - 1))
            put(Gp0, v1, v0, g_long)
            put(Gm0, v0, v1, one.scale(sp))
    else:
        lam, beta = P["lam"], P["beta"]
        a1, a2 = Generator("v0_1", 0), Generator("v0_2", 0)
        b1, b2 = Generator("v1_1", 1), Generator("v1_2", 1)
        gens = [a1, a2, b1, b2]
        c = 2 * d + lam
        put(L0, a1, a1, lin(p, p * d, p * al))
        put(L0, b1, b1, lin(p, p * (d + half), p * al))
        put(L0, b2, b2, lin(p, p * (d + half), p * al))
        put(L0, a2, a2, lin(p, p * (d + 1), p * al))
        put(L0, a2, a1, (Lam * Lam).scale(p * (d + lam * half)))
        put(J0, a1, a1, one.scale(lam))
        put(J0, b1, b1, one.scale(lam + 1))
        put(J0, a2, a2, one.scale(lam))
        put(J0, a2, a1, Lam.scale(c))
        put(J0, b2, b2, one.scale(lam - 1))
        put(Gp0, a1, b1, one.scale(sp))
        put(Gp0, a2, b1, Lam.scale(-sp * c))
        put(Gp0, b2, a1, Lam.scale(sp * c))
        put(Gp0, b2, a2, one.scale(sp))
        put(Gm0, a1, b2, one.scale(sp))
        put(Gm0, b1, a1, lin(2 * sp, sp * (2 * d - lam), 2 * sp * al))
        put(Gm0, b1, a2, one.scale(-sp))
        put(Gm0, a2, b2, lin(2 * sp, sp * (2 * d - lam + 2), 2 * sp * al))
        if beta:
            kind = A.meta.get("kind")
            ok = (kind in ("kb", "kn") and p == F(-1))
            if not ok and not force:
                raise ValueError("beta != 0 requires p = -1 (KB(-1)_[n], n >= 1, or k(1)); "
                                 f"got {A.name}")
            L1, J1, Gp1, Gm1 = (_sym(A, f, 1) for f in ("L", "J", "G+", "G-"))
            if L1 is None:
                raise ValueError(f"beta != 0 needs index-1 symbols; {A.name} has cutoff 0")
            q = -F.i * beta * half
            for v in (a1, b1, b2):
                put(L1, v, v, one.scale(q))
            put(L1, a2, a2, one.scale(q))
            put(L1, a2, a1, Lam.scale(q))
            put(J1, a2, a1, one.scale(F.i * beta))
            put(Gp1, a2, b1, one.scale(beta))
            put(Gp1, b2, a1, one.scale(-beta))
            put(Gm1, b1, a1, one.scale(-beta))
            put(Gm1, a2, b2, one.scale(-beta))
    acts = {k: v for k, v in acts.items() if k[0] is not None}
    M = ConformalModule(A, gens, acts, family=family, params=P)
    M.name = M.label()
    return M
