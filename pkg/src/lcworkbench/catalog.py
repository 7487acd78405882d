"""Constructors for the Block type algebras KB(p)_[n], k(n), K2 and the embedding checks."""

from __future__ import annotations

from .conformal import BasisSymbol, Combination, ConformalSuperalgebra, FAMILY_PARITY, Report
from .linalg import solve_in_span
from .polys import Poly
from .scalars import FieldContext, Scalar, make_field

__all__ = [
    "build_KB_quotient",
    "build_k",
    "build_K2",
    "check_homomorphism",
    "check_K2_embedding",
    "check_scaling_embedding",
    "check_span_closure",
    "check_SB_subalgebra",
    "FAMILIES",
]

FAMILIES = ("L", "J", "G+", "G-")


def _param(p, field):
    if field is None:
        field = make_field(p)
    if isinstance(p, Scalar):
        p = field(p)
    elif isinstance(p, tuple):
        p = field.gaussian(*p)
    elif isinstance(p, str):
        from .parsing import parse_constant

        p = parse_constant(p, field)
    else:
        p = field(p)
    if not p:
        raise ValueError("p must be nonzero")
    return p, field


def _symbols(n):
    return {(f, i): BasisSymbol(f, i, FAMILY_PARITY[f]) for i in range(n + 1) for f in FAMILIES}


def _skew_image(val: Combination, a, b, Lam, D):
    """[b_L a] = -(-1)^{|a||b|} [a_{-L-D} b] from val = [a_L b]."""
    sign = 1 if (a.parity and b.parity) else -1
    out = Combination()
    for e, p in val.items():
        q = p.substitute(1, -Lam - D)
        out.add_term(e, q if sign > 0 else -q)
    return out


def build_KB_quotient(p, n: int, field: FieldContext | None = None, *,
                      gg_lambda_coeff=2, gg_L_coeff=2, name=None) -> ConformalSuperalgebra:
    """KB(p)/KB(p)_<n+1>: basis L_i, J_i, G+_i, G-_i (i <= n), output index > n dropped.

    ``field`` defaults to Q(i, sqrt(p)); any field works since the structure
    constants only involve p.  The two ``gg_*`` keywords exist for defect
    injection and keep their default values in every genuine construction.
    """
    if n < 0:
        raise ValueError("cutoff must be non-negative")
    p, F = _param(p, field)
    sym = _symbols(n)
    D, Lam = Poly.var(F, 0), Poly.var(F, 1)

    def lin(d, l):
        return D.scale(d) + Lam.scale(l)

    table = {}
    for i in range(n + 1):
        for j in range(n + 1):
            k = i + j
            if k > n:
                continue
            Li, Ji, Gpi, Gmi = (sym[(f, i)] for f in FAMILIES)
            Lj, Jj, Gpj, Gmj = (sym[(f, j)] for f in FAMILIES)
            Lk, Jk, Gpk, Gmk = (sym[(f, k)] for f in FAMILIES)
            ip, kk = F(i) + p, F(k)
            table[(Li, Lj)] = Combination.of(Lk, lin(ip, kk + 2 * p))
            table[(Li, Jj)] = Combination.of(Jk, lin(ip, kk + p))
            table[(Li, Gpj)] = Combination.of(Gpk, lin(ip, kk + p * 3 / F(2)))
            table[(Li, Gmj)] = Combination.of(Gmk, lin(ip, kk + p * 3 / F(2)))
            table[(Ji, Gpj)] = Combination.of(Gpk, Poly.const(F, 1))
            table[(Ji, Gmj)] = Combination.of(Gmk, Poly.const(F, -1))
            gg = Combination.of(Jk, lin(F(2 * i) + p, (kk + p) * gg_lambda_coeff))
            gg.add_term(Lk, Poly.const(F, gg_L_coeff))
            table[(Gpi, Gmj)] = gg
    # remaining ordered pairs by skew-symmetry
    for (a, b), val in list(table.items()):
        if (b, a) not in table:
            table[(b, a)] = _skew_image(val, a, b, Lam, D)
    basis = [sym[(f, i)] for i in range(n + 1) for f in FAMILIES]
    degree = {s: s.index for s in basis}
    meta = {"kind": "kb", "p": p, "cutoff": n}
    label = name or f"KB({p})_[{n}]"
    return ConformalSuperalgebra(F, basis, table, degree, label, meta)


def build_k(n: int, field: FieldContext | None = None) -> ConformalSuperalgebra:
    """k(n) = KB(-n)_[n]."""
    if n < 1:
        raise ValueError("k(n) needs n >= 1")
    A = build_KB_quotient(-n, n, field, name=f"k({n})")
    A.meta["kind"] = "kn"
    A.meta["n"] = n
    return A


def build_K2(p=1, field: FieldContext | None = None) -> ConformalSuperalgebra:
    """The N=2 conformal superalgebra on L, J, G+, G- (stored with index 0).

    ``p`` only selects the coefficient field, so that the rescaling map into
    KB(p) can be expressed.
    """
    p, F = _param(p, field)
    sym = _symbols(0)
    L, J, Gp, Gm = (sym[(f, 0)] for f in FAMILIES)
    D, Lam = Poly.var(F, 0), Poly.var(F, 1)
    table = {
        (L, L): Combination.of(L, D + Lam.scale(2)),
        (L, J): Combination.of(J, D + Lam),
        (L, Gp): Combination.of(Gp, D + Lam.scale(F(3) / 2)),
        (L, Gm): Combination.of(Gm, D + Lam.scale(F(3) / 2)),
        (J, Gp): Combination.of(Gp, Poly.const(F, 1)),
        (J, Gm): Combination.of(Gm, Poly.const(F, -1)),
    }
    gg = Combination.of(J, D + Lam.scale(2))
    gg.add_term(L, Poly.const(F, 2))
    table[(Gp, Gm)] = gg
    for (a, b), val in list(table.items()):
        if (b, a) not in table:
            table[(b, a)] = _skew_image(val, a, b, Lam, D)
    basis = [L, J, Gp, Gm]
    return ConformalSuperalgebra(F, basis, table, {s: 0 for s in basis}, "K2",
                                 {"kind": "k2", "p": p, "cutoff": 0})


def _image(phi, val: Combination) -> Combination:
    out = Combination()
    for e, poly in val.items():
        for f, c in phi[e].items():
            out.add_term(f, poly * c)
    return out


def check_homomorphism(A: ConformalSuperalgebra, B: ConformalSuperalgebra, phi: dict,
                       check="homomorphism") -> Report:
    """phi([x_L y]) = [phi(x)_L phi(y)] on every basis pair; phi maps symbols to elements."""
    rep = Report(check, f"{A.name} -> {B.name}")
    for a in A.basis:
        for b in A.basis:
            rep.checked += 1
            lhs = _image(phi, A.entry(a, b))
            rhs = B.bracket(phi[a], phi[b])
            res = lhs - rhs
            if res:
                rep.fail((a.name, b.name), res)
    return rep


def K2_embedding(K: ConformalSuperalgebra, B: ConformalSuperalgebra) -> dict:
    """L -> L_0/p, J -> J_0, G+- -> G+-_0/sqrt(p)."""
    F = B.context
    p = B.meta["p"]
    rp = F.sqrt(p)
    one = Poly.const(F, 1)
    img = {
        "L": Combination.of(B.symbol("L_0"), one.scale(p.inverse())),
        "J": Combination.of(B.symbol("J_0"), one),
        "G+": Combination.of(B.symbol("G+_0"), one.scale(rp.inverse())),
        "G-": Combination.of(B.symbol("G-_0"), one.scale(rp.inverse())),
    }
    return {s: img[s.family] for s in K.basis}


def check_K2_embedding(p, n: int = 0) -> Report:
    B = build_KB_quotient(p, n)
    K = build_K2(p, B.context)
    rep = check_homomorphism(K, B, K2_embedding(K, B), "K2-embedding")
    return rep


def check_scaling_embedding(p, n: int, cutoff: int) -> Report:
    """KB(p)_[cutoff] -> KB(np)_[n*cutoff]: L_i -> L'_{ni}/n, J_i -> J'_{ni}, G_i -> G'_{ni}/sqrt(n)."""
    F = make_field(n)
    A = build_KB_quotient(p, cutoff, F)
    pA = A.meta["p"]
    B = build_KB_quotient(pA * n, n * cutoff, F)
    one = Poly.const(F, 1)
    rn = F.sqrt(n)
    scale = {"L": F(1) / n, "J": F.one, "G+": rn.inverse(), "G-": rn.inverse()}
    phi = {s: Combination.of(B.symbol(f"{s.family}_{n * s.index}"), one.scale(scale[s.family]))
           for s in A.basis}
    rep = check_homomorphism(A, B, phi, "scaling-embedding")
    rep.info["target"] = B.name
    return rep


def _vector(comb: Combination, basis):
    return [comb.get(s) for s in basis]


def check_span_closure(A: ConformalSuperalgebra, gens: dict, check="span-closure") -> Report:
    """Is the F[D]-span of constant-coefficient elements ``gens`` closed under brackets?

    ``gens`` maps labels to elements.  Membership is tested monomial by
    monomial, which is exact because the generators have constant
    coefficients.  Failures name the offending generator pair.
    """
    F = A.context
    rep = Report(check, A.name)
    labels = list(gens)
    vecs = []
    for lab in labels:
        el = A.element(gens[lab])
        vec = []
        for s in A.basis:
            c = el.get(s)
            if c is not None and not c.is_constant():
                raise ValueError("span generators must have constant coefficients")
            vec.append(c.constant_value() if c is not None else F.zero)
        vecs.append(vec)
    brackets = {}
    for x in labels:
        for y in labels:
            rep.checked += 1
            val = A.bracket(gens[x], gens[y])
            monos = {}
            for s, poly in val.items():
                for e, c in poly.terms.items():
                    monos.setdefault(e, {})[s] = c
            coords = {}
            ok = True
            for e, cs in monos.items():
                target = [cs.get(s, F.zero) for s in A.basis]
                sol = solve_in_span(vecs, target, F)
                if sol is None:
                    ok = False
                    break
                for lab, c in zip(labels, sol):
                    if c:
                        coords.setdefault(lab, {})[e] = c
            if not ok:
                rep.fail((x, y), val, reason="bracket leaves the span")
            else:
                brackets[f"[{x} L {y}]"] = {
                    lab: str(Poly(F, t)) for lab, t in sorted(coords.items())}
    rep.info["brackets"] = brackets
    return rep


def check_SB_subalgebra(p, cutoff: int, variant="G") -> Report:
    """span{L_i, G_i = (G+_i + G-_i)/sqrt(2)} closes in KB(p)_[cutoff].

    When sqrt(2) is not in the coefficient field the unnormalized sum is used
    (same span).  ``variant="G+G-"`` spans {L_i, G+_i, G-_i} instead, which
    must fail because [G+ G-] produces J.
    """
    A = build_KB_quotient(p, cutoff)
    F = A.context
    one = Poly.const(F, 1)
    norm = F.sqrt(2).inverse() if F.has_sqrt(2) else F.one
    gens = {}
    for i in range(cutoff + 1):
        gens[f"L_{i}"] = Combination.of(A.symbol(f"L_{i}"), one)
        if variant == "G":
            g = Combination.of(A.symbol(f"G+_{i}"), one.scale(norm))
            g.add_term(A.symbol(f"G-_{i}"), one.scale(norm))
            gens[f"G_{i}"] = g
        elif variant == "G+G-":
            gens[f"G+_{i}"] = Combination.of(A.symbol(f"G+_{i}"), one)
            gens[f"G-_{i}"] = Combination.of(A.symbol(f"G-_{i}"), one)
        else:
            raise ValueError(f"unknown variant {variant!r}")
    rep = check_span_closure(A, gens, "SB-subalgebra")
    rep.info["normalized"] = norm != F.one
    return rep
