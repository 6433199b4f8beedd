import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapbound.cyclotomic import Cyclotomic, omega, sqrt_rational

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def cyclotomics(draw):
    order = draw(st.sampled_from([1, 2, 3, 4, 5, 6, 8, 12]))
    coeffs = draw(st.lists(fractions, min_size=order, max_size=order))
    sqrtpow = draw(st.sampled_from([0, 1]))
    base = draw(st.sampled_from([2, 3, 5, 6, 12]))
    return Cyclotomic(coeffs, order, sqrtpow, base)


@settings(max_examples=1000, deadline=None)
@given(cyclotomics())
def test_parse_print_round_trip(x):
    assert Cyclotomic.parse(str(x)) == x


@settings(max_examples=150, deadline=None)
@given(cyclotomics(), cyclotomics())
def test_float_of_product_matches_product_of_floats(x, y):
    assert abs(complex(x * y) - complex(x) * complex(y)) < 1e-13 * max(1.0, abs(complex(x)) * abs(complex(y)))


@settings(max_examples=100, deadline=None)
@given(cyclotomics(), cyclotomics())
def test_sum_is_exact(x, y):
    assert abs(complex(x + y) - (complex(x) + complex(y))) < 1e-12


@settings(max_examples=200, deadline=None)
@given(cyclotomics())
def test_inverse(x):
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == 1


@settings(max_examples=100, deadline=None)
@given(cyclotomics())
def test_equal_values_hash_alike(x):
    # the same value written in a bigger field and with the radical folded in
    y = x.embedded() * omega(5, 0)
    z = (x * omega(7)) * omega(7, -1)
    assert x == y == z
    assert hash(x) == hash(y) == hash(z)


@settings(max_examples=200, deadline=None)
@given(cyclotomics())
def test_json_round_trip(x):
    assert Cyclotomic.from_json(x.to_json()) == x


def test_float_conversion_within_1e14():
    w = omega(3)
    assert abs(complex(w) - cmath.exp(2j * cmath.pi / 3)) < 1e-14
    assert abs(complex(Cyclotomic(1, 1, 1, 3)) - 3 ** -0.5) < 1e-14


def test_cyclotomic_relation_reduces():
    w = omega(3)
    assert 1 + w + w * w == 0
    assert w ** 3 == 1
    assert (w * w).coeffs == (Fraction(-1), Fraction(-1), Fraction(0))


def test_gauss_sum_radical_matches_symbolic_radical():
    # w - w^2 = i sqrt(3)
    w = omega(3)
    i_sqrt3 = w - w * w
    assert i_sqrt3 == omega(4) * 3 * Cyclotomic(1, 1, 1, 3)
    assert sqrt_rational(3) * Cyclotomic(1, 1, 1, 3) == 1


def test_order_two_mod_four_is_folded():
    assert omega(6) == -(omega(3) ** 2)
    assert omega(6).order == 3


def test_rational_helpers():
    assert sqrt_rational(Fraction(1, 3)) == Cyclotomic(1, 1, 1, 3)
    assert sqrt_rational(4) == 2
    assert Cyclotomic(Fraction(2, 3)).to_fraction() == Fraction(2, 3)
    with pytest.raises(ValueError):
        omega(3).to_fraction()


def test_compact_json_radical_defaults_to_order():
    x = Cyclotomic.from_json({"coeffs": ["1/3", "0", "0"], "order": 3, "sqrtpow": 1})
    assert x == Cyclotomic(Fraction(1, 3)) * Cyclotomic(1, 1, 1, 3)


def test_pretty():
    w = omega(3)
    assert w.pretty() == "ω"
    assert (w * w).pretty() == "ω²"
    assert (w * Cyclotomic(1, 1, 1, 3)).pretty() == "ω/√3"


@pytest.mark.parametrize("bad", ["", "z3^", "1/0x"])
def test_parse_rejects_garbage(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        Cyclotomic.parse(bad)
