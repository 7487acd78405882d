from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lcworkbench.scalars import make_field, parse_gaussian
from lcworkbench.parsing import parse_constant

from conftest import small_fractions

P_VALUES = [2, -2, 3, Fraction(1, 2), -1, 4, (0, 2), (1, 1)]


def test_degree_two_for_nonsquare():
    F = make_field(2)
    assert F.degree == 2
    assert F.s * F.s == F(2)


def test_canonical_roots():
    assert make_field(4).degree == 1
    assert make_field(4).s == make_field(4)(2)
    F = make_field(-1)
    assert F.degree == 1 and F.s == F.i
    assert F.s * F.s == F(-1)
    assert make_field(-4).s == make_field(-4).i * 2
    G = make_field((0, 2))
    assert G.s == G.gaussian(1, 1)


def test_zero_parameter_rejected():
    with pytest.raises(ValueError, match="nonzero"):
        make_field(0)


def test_arith_examples():
    F = make_field(2)
    assert (1 + F.s) * (1 - F.s) == F(-1)
    assert F.s / F.s == F.one
    with pytest.raises(ZeroDivisionError):
        F.s / F.zero


def test_sqrt_helpers():
    F = make_field(-3)
    assert F.sqrt(-1) == F.i
    assert F.sqrt(-3) ** 2 == F(-3)
    assert F.sqrt(-12) ** 2 == F(-12)
    assert not F.has_sqrt(2)
    with pytest.raises(ValueError):
        F.sqrt(2)


def scalars(F):
    return st.builds(lambda a, b, c, d: F(a) + F.i * b + F.s * c + F.i * F.s * d,
                     small_fractions, small_fractions, small_fractions, small_fractions)


@pytest.mark.parametrize("p", P_VALUES)
def test_field_axioms(p):
    F = make_field(p)

    @given(scalars(F), scalars(F), scalars(F))
    def run(x, y, z):
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + y == y + x and x * y == y * x
        if x:
            assert x * x.inverse() == F.one

    run()


@pytest.mark.parametrize("p", P_VALUES)
def test_render_parse_roundtrip(p):
    F = make_field(p)

    @given(scalars(F))
    def run(x):
        assert parse_constant(str(x), F) == x

    run()


def test_coordinates_independent():
    F = make_field(3)
    x = F(1) + F.i - F.s
    assert x and x.c[2] == -1
    assert not (x - x)
    assert str(F(Fraction(1, 2)) - F.i * Fraction(3, 4) + F.s * 5 - F.i * F.s / 3) == \
        "1/2 - 3/4*i + 5*s - 1/3*i*s"


def test_parse_gaussian():
    assert parse_gaussian("1/2 - 3*i") == (Fraction(1, 2), Fraction(-3))
