from fractions import Fraction

import pytest
from hypothesis import given, settings

from lcworkbench.catalog import build_K2, build_KB_quotient, build_k
from lcworkbench.modules import build_module, reverse_parity
from lcworkbench.polys import Poly

from conftest import small_fractions

P_SET = [1, -1, 2, -2, Fraction(1, 2)]


def test_act_examples():
    A = build_KB_quotient(3, 1)
    M = build_module("V1", {"delta": "2/3", "alpha": "5"}, A)
    assert str(M.act("L_0", "v0")) == "((3)*D + (2)*L + (15))*v0"
    # D in the second slot shifts to D + lambda
    assert str(M.act("L_0", "D*v0")) == "((3)*D^2 + (5)*D*L + (15)*D + (2)*L^2 + (15)*L)*v0"
    assert M.act("L_0", "D*v0") == M.act("L_0", "v0").times(
        Poly.var(A.context, 0) + Poly.var(A.context, 1))
    assert str(M.act("G-_0", "v1")) == "((2*s)*D + (8/3*s)*L + (10*s))*v0"
    assert not M.act("G+_0", "v1")
    # D in the first slot becomes -lambda
    assert M.act("D*L_0", "v0") == M.act("L_0", "v0").times(-Poly.var(A.context, 1))


def test_family_examples():
    K = build_K2()
    M = build_module("V2", {"delta": "1/2", "alpha": "0"}, K)
    assert M.act("G-_0", "v0") == M.element("v1")
    T = build_module("trivial", {"alpha": 7}, K)
    assert T.torsion == K.context(7) and not T.actions and T.rank == (1, 0)
    k1 = build_k(1)
    M = build_module("V22", {"delta": 1, "lam": 2, "alpha": 0, "beta": 1}, k1)
    assert M.act("J_1", "v0_2") == M.element("i*v0_1")


def test_kn_display_cross_check():
    # k(n) displays: L0 v0 = -n(D + Delta lambda + alpha) v0, G0+ v0 = sqrt(-n) v1
    A = build_k(2)
    M = build_module("V1", {"delta": "1/3", "alpha": "2"}, A)
    assert str(M.act("L_0", "v0")) == "((-2)*D + (-2/3)*L + (-4))*v0"
    assert str(M.act("L_0", "v1")) == "((-2)*D + (-5/3)*L + (-4))*v1"
    assert str(M.act("G+_0", "v0")) == "(s)*v1"
    assert A.context.p == -2
    N = build_module("V22", {"delta": "1/3", "lam": "1", "alpha": "2"}, A)
    assert str(N.act("L_0", "v0_2")) == "(-5/3)*L^2*v0_1 + ((-2)*D + (-8/3)*L + (-4))*v0_2"
    assert str(N.act("G+_0", "v1_2")) == "(5/3*s)*L*v0_1 + (s)*v0_2"


def test_beta_requires_minus_one():
    with pytest.raises(ValueError, match="p = -1"):
        build_module("V22", {"delta": 1, "lam": 1, "alpha": 0, "beta": 1}, build_KB_quotient(2, 2))
    with pytest.raises(ValueError, match="cutoff 0"):
        build_module("V22", {"delta": 1, "lam": 1, "alpha": 0, "beta": 1},
                     build_KB_quotient(-1, 0))
    with pytest.raises(ValueError, match="does not take"):
        build_module("V1", {"delta": 1, "beta": 1}, build_KB_quotient(2, 2))


def test_axioms_spec_examples():
    M = build_module("V22", {"delta": 1, "lam": 3, "alpha": 0}, build_KB_quotient(2, 3))
    assert M.check_module_axioms().passed
    M = build_module("V22", {"delta": 1, "lam": 3, "alpha": 0, "beta": 5}, build_KB_quotient(-1, 2))
    assert M.check_module_axioms().passed


@pytest.mark.parametrize("p", [-2, 1, 2, Fraction(1, 2), 3])
def test_beta_block_fails_away_from_minus_one(p):
    M = build_module("V22", {"delta": 1, "lam": 3, "alpha": 0, "beta": 5},
                     build_KB_quotient(p, 2), force=True)
    assert not M.check_module_axioms().passed


@pytest.mark.parametrize("p", P_SET)
@pytest.mark.parametrize("family", ["V1", "V2", "V22"])
def test_families_satisfy_axioms(p, family):
    A = build_KB_quotient(p, 2)

    @settings(max_examples=5)
    @given(small_fractions, small_fractions, small_fractions)
    def run(d, lam, a):
        par = {"delta": d, "alpha": a}
        if family == "V22":
            par["lam"] = lam
        rep = build_module(family, par, A).check_module_axioms()
        assert rep.passed, rep.failures[:1]

    run()


@settings(max_examples=8)
@given(small_fractions, small_fractions, small_fractions, small_fractions.filter(bool))
def test_beta_family_axioms(d, lam, a, b):
    for A in (build_KB_quotient(-1, 2), build_k(1)):
        M = build_module("V22", {"delta": d, "lam": lam, "alpha": a, "beta": b}, A)
        assert M.check_module_axioms().passed


def test_higher_index_acts_by_zero():
    A = build_KB_quotient(2, 3)
    for family, par in (("V1", {"delta": 1}), ("V2", {"delta": 1}), ("V22", {"delta": 1, "lam": 2})):
        M = build_module(family, par, A)
        assert all(a.index == 0 for a, _ in M.actions)


def test_parity_homogeneous():
    M = build_module("V22", {"delta": 1, "lam": 2, "beta": 3}, build_KB_quotient(-1, 2))
    for (a, v), val in M.actions.items():
        assert all(w.parity == (a.parity + v.parity) % 2 for w in val)


def test_reverse_parity():
    M = build_module("V1", {"delta": "1/2"}, build_KB_quotient(2, 1))
    R = reverse_parity(M)
    assert R.rank == (1, 1)
    assert R.generator("v1").parity == 0  # the old odd generator is now even
    assert R.check_module_axioms().passed
    RR = reverse_parity(R)
    assert [g.parity for g in RR.generators] == [g.parity for g in M.generators]
    assert RR.label() == M.label()
    assert {(a.name, v.name): str(x) for (a, v), x in RR.actions.items()} == \
        {(a.name, v.name): str(x) for (a, v), x in M.actions.items()}
