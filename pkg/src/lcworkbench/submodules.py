"""Submodules of free conformal modules over F[D].

Vectors are lists of D-univariate :class:`Poly`, one coordinate per module
generator.  :func:`hermite_form` gives the canonical echelon basis of a row
span, which makes closure, membership and equality of submodules exact.
"""

from __future__ import annotations

import random
from itertools import permutations

from .conformal import Combination, Report
from .modules import ConformalModule, Generator, build_module, reverse_parity
from .polys import Poly

__all__ = [
    "HermiteBasis",
    "hermite_form",
    "membership",
    "closure",
    "to_vector",
    "to_element",
    "submodule_module",
    "quotient_module",
    "check_iso",
    "composition_factors",
    "irreducibility_probe",
    "FactorError",
]


class FactorError(RuntimeError):
    """A step of a composition-factor verification did not check out."""


class HermiteBasis:
    def __init__(self, field, ncols, rows, pivots):
        self.field = field
        self.ncols = ncols
        self.rows = rows
        self.pivots = pivots

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        return (isinstance(other, HermiteBasis) and self.ncols == other.ncols
                and self.rows == other.rows)

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def pivot_degrees(self):
        return [self.rows[k][c].degree(0) for k, c in enumerate(self.pivots)]

    def is_full(self):
        return len(self.rows) == self.ncols and all(d == 0 for d in self.pivot_degrees())

    def to_strings(self, names=None):
        out = []
        for r in self.rows:
            if names is None:
                out.append([str(x) for x in r])
            else:
                out.append(_vec_str(r, names))
        return out

    def __repr__(self):
        return f"<HermiteBasis {len(self.rows)} rows, pivots {self.pivots}>"


def _vec_str(vec, names):
    parts = [f"{x}*{n}" if len(x.terms) == 1 else f"({x})*{n}" for x, n in zip(vec, names) if x]
    return " + ".join(parts) if parts else "0"


def _check_D(vec):
    for x in vec:
        if not x.is_univariate_D():
            raise ValueError("Hermite vectors must have D-univariate coordinates")


def hermite_form(rows, field, ncols=None) -> HermiteBasis:
    """Canonical row echelon basis over F[D]: monic pivots, entries above pivots reduced."""
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    for r in rows:
        if len(r) != ncols:
            raise ValueError("rows of unequal length")
        _check_D(r)
    rows = [r for r in rows if any(r)]
    done, pivots = [], []
    for c in range(ncols):
        active = [r for r in rows if r[c]]
        rest = [r for r in rows if not r[c]]
        if not active:
            continue
        # Euclid on column c until a single row carries a nonzero entry
        while len(active) > 1:
            active.sort(key=lambda r: r[c].degree(0))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q, _ = r[c].divmod_D(piv[c])
                r = [x - q * y for x, y in zip(r, piv)]
                if r[c]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        piv = active[0]
        inv = piv[c].leading_D().inverse()
        piv = [x.scale(inv) for x in piv]
        done.append(piv)
        pivots.append(c)
        rows = rest
    # reduce above pivots
    for j in range(len(done)):
        c = pivots[j]
        for i in range(j):
            q, _ = done[i][c].divmod_D(done[j][c])
            if q:
                done[i] = [x - q * y for x, y in zip(done[i], done[j])]
    return HermiteBasis(field, ncols, done, pivots)


def membership(vec, B: HermiteBasis):
    """(True, coefficients) if vec lies in the span of B, else (False, None)."""
    v = list(vec)
    _check_D(v)
    if len(v) != B.ncols:
        raise ValueError("vector length does not match the basis")
    cert = []
    for row, c in zip(B.rows, B.pivots):
        if not v[c]:
            cert.append(Poly.zero(B.field))
            continue
        q, r = v[c].divmod_D(row[c])
        if r:
            return False, None
        v = [x - q * y for x, y in zip(v, row)]
        cert.append(q)
    if any(v):
        return False, None
    return True, cert


def to_vector(M: ConformalModule, x):
    el = M.element(x)
    F = M.context
    return [el.get(g, Poly.zero(F)) for g in M.generators]


def to_element(M: ConformalModule, vec) -> Combination:
    out = Combination()
    for g, x in zip(M.generators, vec):
        out.add_term(g, x)
    return out


def _split_parity(M, vec):
    F = M.context
    out = []
    for par in (0, 1):
        part = [x if g.parity == par else Poly.zero(F) for g, x in zip(M.generators, vec)]
        if any(part):
            out.append(part)
    return out


def _lambda_parts(M, val: Combination):
    """Split an action value sum_k L^k w_k into its D-vectors w_k."""
    F = M.context
    parts = {}
    for g, poly in val.items():
        for k, c in poly.coefficients("L").items():
            parts.setdefault(k, {})[g] = c
    n = len(M.generators)
    out = []
    for k in sorted(parts):
        vec = [Poly.zero(F)] * n
        for g, c in parts[k].items():
            vec[M.generators.index(g)] = c
        out.append((k, vec))
    return out


def closure(M: ConformalModule, gens) -> HermiteBasis:
    """Smallest graded F[D]-submodule containing ``gens`` and stable under every action.

    Generators are split into homogeneous components first; the fixpoint
    loop acts by every basis symbol in catalog order.
    """
    F = M.context
    n = len(M.generators)
    rows = []
    for g in gens:
        vec = g if isinstance(g, list) else to_vector(M, g)
        rows.extend(_split_parity(M, vec))
    B = hermite_form(rows, F, n)
    while True:
        added = []
        for a in M.algebra.basis:
            for row in B.rows:
                val = M.act(Combination.of(a, Poly.const(F, 1)), to_element(M, row))
                for _, vec in _lambda_parts(M, val):
                    if not membership(vec, B)[0]:
                        added.append(vec)
        if not added:
            return B
        B = hermite_form(B.rows + added, F, n)


def _row_parity(M, row):
    pars = {g.parity for g, x in zip(M.generators, row) if x}
    if len(pars) != 1:
        raise ValueError("submodule row is not parity homogeneous")
    return pars.pop()


def submodule_module(M: ConformalModule, B: HermiteBasis, names=None, name=None) -> ConformalModule:
    """The submodule spanned by B as a free module on its Hermite rows."""
    F = M.context
    if names is None:
        names = [f"w{k + 1}" for k in range(len(B.rows))]
    gens = [Generator(nm, _row_parity(M, r)) for nm, r in zip(names, B.rows)]
    Lam = Poly.var(F, 1)
    acts = {}
    for a in M.algebra.basis:
        for g, row in zip(gens, B.rows):
            val = M.act(Combination.of(a, Poly.const(F, 1)), to_element(M, row))
            out = Combination()
            for k, vec in _lambda_parts(M, val):
                ok, cert = membership(vec, B)
                if not ok:
                    raise FactorError(f"submodule is not closed under {a.name} acting on {g.name}")
                lk = Lam ** k
                for h, c in zip(gens, cert):
                    out.add_term(h, c * lk)
            if out:
                acts[(a, g)] = out
    return ConformalModule(M.algebra, gens, acts, family="submodule",
                           name=name or f"sub({M.name})")


def _zero_module(M):
    return ConformalModule(M.algebra, [], {}, family="zero", name="0")


def quotient_module(M: ConformalModule, S: HermiteBasis):
    """M/S for the two supported shapes.

    Returns (Q, info).  Shape "free": after a permutation of generators all
    pivots are units and Q is free on the non-pivot generators.  Shape
    "trivial": S has full rank with a single pivot D + c; Q is C c_{-c}.
    Anything else raises ValueError("unsupported quotient shape ...").
    """
    F = M.context
    n = len(M.generators)
    if not S.rows:
        return M, {"shape": "free", "kept": [g.name for g in M.generators]}
    if S.is_full():
        return _zero_module(M), {"shape": "zero"}
    for perm in permutations(range(n)):
        rows = [[r[j] for j in perm] for r in S.rows]
        H = hermite_form(rows, F, n)
        degs = H.pivot_degrees()
        if all(d == 0 for d in degs):
            return _free_quotient(M, H, perm), {"shape": "free", "permutation": list(perm),
                                                "kept": [M.generators[perm[j]].name for j in range(n)
                                                         if j not in H.pivots]}
        if len(H.rows) == n and sorted(degs) == [0] * (n - 1) + [1]:
            return _trivial_quotient(M, H, perm)
    raise ValueError("unsupported quotient shape: needs unit pivots or one pivot D + c")


def _reduce(H, perm, vec):
    """Reduce a vector in M's coordinates modulo H (permuted coordinates)."""
    v = [vec[j] for j in perm]
    for row, c in zip(H.rows, H.pivots):
        if v[c] and row[c].degree(0) == 0:
            q = v[c].scale(row[c].leading_D().inverse())
            v = [x - q * y for x, y in zip(v, row)]
    return v


def _free_quotient(M, H, perm):
    F = M.context
    n = len(M.generators)
    keep = [j for j in range(n) if j not in H.pivots]
    kept = [M.generators[perm[j]] for j in keep]
    gens = [Generator(g.name, g.parity) for g in kept]
    acts = {}
    for (a, v), val in M.actions.items():
        if v not in kept:
            continue
        out = Combination()
        for k, vec in _lambda_parts(M, val):
            red = _reduce(H, perm, vec)
            lk = Poly.var(F, 1) ** k
            for j, g in zip(keep, gens):
                out.add_term(g, red[j] * lk)
        if out:
            acts[(a, v.name)] = out
    return ConformalModule(M.algebra, gens, acts, family="quotient", name=f"{M.name}/S")


def _trivial_quotient(M, H, perm):
    k = next(i for i, d in enumerate(H.pivot_degrees()) if d == 1)
    c = H.pivots[k]
    root = -H.rows[k][c].eval_D(0)
    gen = M.generators[perm[c]]
    # every action on the surviving class must vanish at D = root
    for a in M.algebra.basis:
        val = M.action(a, gen)
        for _, vec in _lambda_parts(M, val):
            red = _reduce(H, perm, vec)
            if red[c].eval_D(root):
                raise ValueError("unsupported quotient shape: one-dimensional quotient "
                                 "with a nonzero action")
    Q = build_module("trivial", {"alpha": root}, M.algebra, parity=gen.parity)
    return Q, {"shape": "trivial", "permutation": list(perm), "kept": [gen.name],
               "D acts as": str(root)}


def check_iso(M: ConformalModule, N: ConformalModule, phi: dict, parity_flip=False) -> Report:
    """phi maps each generator of M to an element of N (of N~ when parity_flip).

    Intertwining failures name the (symbol, generator) cell; a map that is
    not invertible over F[D] is reported as its own failure kind.
    """
    target = reverse_parity(N) if parity_flip else N
    F = M.context
    rep = Report("isomorphism", f"{M.name} -> {target.name}")
    img = {}
    for g in M.generators:
        if g.name not in phi:
            raise ValueError(f"map does not cover generator {g.name}")
        img[g] = target.element(phi[g.name])
        for h in img[g]:
            if h.parity != g.parity:
                rep.fail((g.name,), img[g], kind="parity", reason="map does not preserve parity")
    one = Poly.const(F, 1)
    for a in M.algebra.basis:
        x = Combination.of(a, one)
        for g in M.generators:
            rep.checked += 1
            lhs = Combination()
            for w, f in M.action(a, g).items():
                for h, m in img[w].items():
                    lhs.add_term(h, f * m)
            res = lhs - target.act(x, img[g])
            if res:
                rep.fail((a.name, g.name), res, kind="intertwining")
    rows = [to_vector(target, img[g]) for g in M.generators]
    invertible = (len(M.generators) == len(target.generators)
                  and hermite_form(rows, F, len(target.generators)).is_full())
    rep.info["invertible"] = invertible
    if not invertible:
        rep.fail(("matrix",), "not invertible over F[D]", kind="invertibility")
    return rep


# -- composition factors -------------------------------------------------

class _Transcript:
    def __init__(self):
        self.steps = []

    def record(self, step, report=None, **data):
        entry = {"step": step}
        entry.update(data)
        if report is not None:
            entry["pass"] = report.passed
            if not report.passed:
                entry["failures"] = report.failures
                self.steps.append(entry)
                raise FactorError(f"{step}: {report.failures[0]}")
        self.steps.append(entry)


def _model(family, params, A, reversed_=False):
    M = build_module(family, params, A)
    return reverse_parity(M) if reversed_ else M


def _assert_simple(M, T):
    for g in M.generators:
        B = closure(M, [g.name])
        ok = B.is_full()
        T.record("generator closure is full", module=M.name, generator=g.name, full=ok)
        if not ok:
            raise FactorError(f"closure of {g.name} in {M.name} is proper")


def _closure_step(M, gen_expr, expected, T):
    S = closure(M, [gen_expr])
    E = hermite_form([to_vector(M, e) for e in expected], M.context, len(M.generators))
    names = [g.name for g in M.generators]
    T.record("closure", module=M.name, generator=str(gen_expr), basis=S.to_strings(names),
             matches=S == E)
    if S != E:
        raise FactorError(f"closure of {gen_expr} in {M.name} differs from the expected submodule")
    return S


def _factor(M, T):
    """Verified factor labels of a catalog module (recursive)."""
    F = M.context
    P = M.params
    rev = M.reversed
    if M.family == "trivial":
        return [M.label()]
    A = M.algebra
    half = F(1) / 2
    if M.family in ("V1", "V2"):
        d, al = P["delta"], P["alpha"]
        if d:
            _assert_simple(M, T)
            return [M.label()]
        S = _closure_step(M, f"(D + ({al}))*v0", [f"(D + ({al}))*v0", "v1"], T)
        sub = submodule_module(M, S, names=["w0", "w1"])
        other = "V2" if M.family == "V1" else "V1"
        model = _model(other, {"delta": half, "alpha": al}, A, not rev)
        # (D+a) v0 -> even generator of the model, v1 -> 2 * odd generator
        phi = {"w0": "v1", "w1": "2*v0"}
        rep = check_iso(sub, model, phi, parity_flip=False)
        T.record("isomorphism", rep, source=f"C[D](D+{al})v0 + C[D]v1 in {M.name}",
                 target=model.label(), map=phi)
        Q, info = quotient_module(M, S)
        expect = build_module("trivial", {"alpha": -al}, A, parity=M.generators[0].parity)
        ok = Q.is_trivial and Q.torsion == expect.torsion and Q.generators[0].parity == expect.generators[0].parity
        T.record("quotient", module=M.name, shape=info["shape"], label=Q.label() if Q.is_trivial else Q.name,
                 matches=ok)
        if not ok:
            raise FactorError(f"quotient of {M.name} is not {expect.label()}")
        return _factor(model, T) + [Q.label()]
    if M.family == "V22":
        d, lam, al, beta = P["delta"], P["lam"], P["alpha"], P["beta"]
        if beta:
            _assert_simple(M, T)
            return [M.label()]
        routes = []
        if not (2 * d + lam):
            routes.append(_route_minus(M, T))
        if not (2 * d - lam):
            routes.append(_route_plus(M, T))
        if not routes:
            _assert_simple(M, T)
            return [M.label()]
        if len(routes) == 2 and sorted(routes[0]) != sorted(routes[1]):
            raise FactorError("the two filtrations give different factor lists")
        return routes[0]
    raise FactorError(f"no factor rule for family {M.family}")


def _route_minus(M, T):
    """2 Delta + Lambda = 0: M1 = span{v0_2, v1_2} ~ V(1)~_{Delta+1/2}, quotient V(1)_Delta."""
    F, A, P, rev = M.context, M.algebra, M.params, M.reversed
    d, al = P["delta"], P["alpha"]
    # v1_2 generates M1 for every Delta (v0_2 alone does not when Delta = -1/2)
    S = _closure_step(M, "v1_2", ["v0_2", "v1_2"], T)
    sub = submodule_module(M, S, names=["v0_2", "v1_2"])
    model = _model("V1", {"delta": d + F(1) / 2, "alpha": al}, A, not rev)
    phi = {"v1_2": "v0", "v0_2": "v1"}
    rep = check_iso(sub, model, phi)
    T.record("isomorphism", rep, source=f"M1 in {M.name}", target=model.label(), map=phi)
    Q, info = quotient_module(M, S)
    qmodel = _model("V1", {"delta": d, "alpha": al}, A, rev)
    qphi = {"v0_1": "v0", "v1_1": "v1"}
    rep = check_iso(Q, qmodel, qphi)
    T.record("quotient isomorphism", rep, source=f"{M.name}/M1", target=qmodel.label(),
             map=qphi, kept=info.get("kept"))
    return _factor(qmodel, T) + _factor(model, T)


def _route_plus(M, T):
    """2 Delta - Lambda = 0: M2 = span{2(D+a)v0_1 - v0_2, v1_1} ~ V(2)~_{Delta+1/2}, quotient V(2)_Delta."""
    F, A, P, rev = M.context, M.algebra, M.params, M.reversed
    d, al = P["delta"], P["alpha"]
    w = f"2*(D + ({al}))*v0_1 - v0_2"
    S = _closure_step(M, "v1_1", [w, "v1_1"], T)
    # name the Hermite rows by the element they equal
    names = []
    for row in S.rows:
        el = to_element(M, row)
        names.append("v1_1" if M.generator("v1_1") in el else "w")
    sub = submodule_module(M, S, names=names)
    wrow = S.rows[names.index("w")]
    scale = wrow[M.generators.index(M.generator("v0_2"))].constant_value()
    # the Hermite row is scale * (v0_2 - 2(D+a) v0_1) up to sign; map it accordingly
    model = _model("V2", {"delta": d + F(1) / 2, "alpha": al}, A, not rev)
    phi = {"v1_1": "v0", "w": f"({-scale})*v1"}
    rep = check_iso(sub, model, phi)
    T.record("isomorphism", rep, source=f"M2 in {M.name}", target=model.label(),
             map={"2(D+a)v0_1 - v0_2": "v1", "v1_1": "v0"})
    Q, info = quotient_module(M, S)
    qmodel = _model("V2", {"delta": d, "alpha": al}, A, rev)
    qphi = {"v0_1": "v0", "v1_2": "v1"}
    rep = check_iso(Q, qmodel, qphi)
    T.record("quotient isomorphism", rep, source=f"{M.name}/M2", target=qmodel.label(),
             map=qphi, kept=info.get("kept"))
    return _factor(qmodel, T) + _factor(model, T)


def composition_factors(M: ConformalModule):
    """(sorted factor labels, transcript).  Raises FactorError on any failed step."""
    T = _Transcript()
    labels = _factor(M, T)
    return sorted(labels), T.steps


# -- probes --------------------------------------------------------------

def _random_scalar(F, rng):
    c = F(rng.randint(-3, 3))
    r = rng.random()
    if r < 0.15:
        c = c + F.i * rng.randint(-3, 3)
    elif r < 0.3 and F.degree == 2:
        c = c + F.s * rng.randint(-3, 3)
    return c


def _random_vector(M, rng, bound):
    F = M.context
    n = len(M.generators)
    support = rng.sample(range(n), rng.randint(1, n))
    vec = [Poly.zero(F)] * n
    for j in support:
        d = rng.randint(0, bound)
        terms = {(k, 0, 0): _random_scalar(F, rng) for k in range(d + 1)}
        vec[j] = Poly(F, terms)
    return vec


def irreducibility_probe(M: ConformalModule, degree_bound=3, trials=50, seed=0) -> dict:
    """Closure of random sparse vectors; REDUCIBLE with a witness or NO-WITNESS-FOUND.

    NO-WITNESS-FOUND is not a proof of irreducibility.
    """
    rng = random.Random(seed)
    names = [g.name for g in M.generators]
    witnesses = []
    tried = 0
    for _ in range(trials):
        vec = _random_vector(M, rng, degree_bound)
        if not any(vec):
            continue
        tried += 1
        B = closure(M, [vec])
        if not B.is_full():
            witnesses.append({"witness": _vec_str(vec, names), "closure": B.to_strings(names),
                              "_basis": B})
    out = {
        "module": M.name,
        "seed": seed,
        "degree_bound": degree_bound,
        "trials": trials,
        "nonzero_trials": tried,
        "verdict": "REDUCIBLE" if witnesses else "NO-WITNESS-FOUND",
        "witness_count": len(witnesses),
    }
    if witnesses:
        out["witness"] = witnesses[0]["witness"]
        out["closure"] = witnesses[0]["closure"]
        distinct = {w["_basis"] for w in witnesses}
        out["distinct_closures"] = [b.to_strings(names) for b in
                                    sorted(distinct, key=lambda b: str(b.to_strings(names)))]
        out["_bases"] = list(distinct)
    return out
