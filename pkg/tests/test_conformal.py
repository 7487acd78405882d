from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lcworkbench.catalog import build_KB_quotient, build_k
from lcworkbench.conformal import Combination
from lcworkbench.polys import Poly


@pytest.fixture(scope="module")
def kb():
    return build_KB_quotient(3, 2)


def comb(A, text):
    return A.element(text)


def test_bracket_examples(kb):
    A = kb
    assert A.bracket("L_0", "L_0") == comb(A, "(3*D + 6*L)*L_0")
    assert A.bracket("D*L_0", "L_0") == comb(A, "-L*(3*D + 6*L)*L_0")
    assert A.bracket("J_0", "J_0") == Combination()


def test_k_products(kb):
    A = kb
    p = A.meta["p"]
    kp = dict(A.k_products("L_1", "L_1"))
    assert kp[0] == comb(A, f"(1 + {p})*D*L_2")
    assert kp[1] == comb(A, f"(2 + 2*{p})*L_2")
    kp = dict(A.k_products("G+_0", "G-_1"))
    assert kp[0] == comb(A, f"({p})*D*J_1 + 2*L_1")
    assert kp[1] == comb(A, f"2*(1 + {p})*J_1")
    assert A.k_products("J_0", "J_1") == []


def test_k_products_reconstruct(kb):
    A = kb
    F = A.context
    L = Poly.var(F, 1)
    for a in A.basis:
        for b in A.basis:
            out = Combination()
            fact = 1
            for k, c in A.k_products(a, b):
                fact = 1
                for j in range(2, k + 1):
                    fact *= j
                out = out + c.times((L ** k).scale(F(Fraction(1, fact))))
            assert out == A.entry(a, b)


def test_skew_examples():
    assert build_k(2).check_skew_symmetry().passed
    A = build_KB_quotient(1, 3)
    assert A.check_skew_symmetry().passed
    assert A.check_jacobi([("L_1", "J_2", "G+_0")]).passed


def test_jacobi_examples():
    rep = build_k(1).check_jacobi()
    assert rep.passed and rep.checked == 8 ** 3
    assert build_KB_quotient(-1, 2).check_jacobi([("L_0", "G+_0", "G-_0")]).passed


def test_sign_flip_detected():
    A = build_KB_quotient(-1, 1)
    bad = A.with_entry("J_0", "G+_0", -A.entry(A.symbol("J_0"), A.symbol("G+_0")))
    rep = bad.check_skew_symmetry()
    assert ["J_0", "G+_0"] in [f["cell"] for f in rep.failures]


def test_coefficient_sabotage_detected():
    bad = build_KB_quotient(-1, 2, gg_lambda_coeff=3)
    rep = bad.check_jacobi([("L_0", "G+_0", "G-_0")])
    assert not rep.passed
    assert rep.failures[0]["cell"] == ["L_0", "G+_0", "G-_0"]
    assert rep.failures[0]["residual"] == "(-1/2)*L^2*J_0"


def test_construction_validates_grading_and_parity():
    A = build_KB_quotient(2, 1)
    bad = dict(A.table)
    bad[(A.symbol("L_0"), A.symbol("L_0"))] = Combination.of(A.symbol("J_1"), Poly.const(A.context, 1))
    with pytest.raises(ValueError, match="grading"):
        type(A)(A.context, A.basis, bad, A.degree)
    bad[(A.symbol("L_0"), A.symbol("L_0"))] = Combination.of(A.symbol("G+_0"), Poly.const(A.context, 1))
    with pytest.raises(ValueError, match="parity"):
        type(A)(A.context, A.basis, bad, A.degree)


def test_unknown_symbol(kb):
    with pytest.raises(ValueError, match="L_7"):
        kb.bracket("L_7", "L_0")
    with pytest.raises(KeyError):
        kb.symbol("L_7")


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 2))
def test_sesquilinearity(a, b, k):
    A = build_KB_quotient(-2, 1)
    F = A.context
    D, L = Poly.var(F, 0), Poly.var(F, 1)
    f = D ** k * a + Poly.const(F, b)
    x = Combination.of(A.symbol("G+_0"), f)
    y = Combination.of(A.symbol("G-_1"), f)
    base = A.bracket("G+_0", "G-_1")
    assert A.bracket(x, "G-_1") == base.times(f.substitute(0, -L))
    assert A.bracket("G+_0", y) == base.times(f.substitute(0, D + L))
