from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drcalc.exact_scaled import ScaledDecimal, add_exact, cmp_exact, digit_at, mul_exact, sub_exact, truncate

P = ScaledDecimal.parse
scaled = st.builds(ScaledDecimal, st.integers(-10**6, 10**6), st.integers(0, 6))


def test_worked_sum():
    assert str(add_exact(P("(-8).765"), P("5.678"))) == "(-2).443"


def test_sum_with_zero_and_determined_prefix():
    x = P("3.25")
    assert add_exact(x, ScaledDecimal(0)) == x
    assert str(add_exact(P("0.12"), P("0.45"))) == "0.57"


def test_scale_rules():
    assert add_exact(P("1.5"), P("0.25")).scale == 2
    assert mul_exact(P("1.5"), P("0.25")).scale == 3


def test_sub_and_mul():
    d = sub_exact(P("5.678"), P("8.765"))
    assert d.to_fraction() == Fraction(-3087, 1000)
    assert str(d) == "(-4).913"
    assert str(mul_exact(P("0.33"), P("0.3"))) == "0.099"
    a = P("(-3).14")
    assert mul_exact(a, ScaledDecimal(1)) == a


def test_truncate_floor():
    assert truncate(P("-3.087"), 0) == ScaledDecimal(-4)
    assert str(truncate(P("2.718"), 2)) == "2.71"
    t = truncate(ScaledDecimal(5), 3)
    assert t.scale == 3 and str(t) == "5.000"


def test_digit_at():
    x = P("-3.087")
    assert str(x) == "(-4).913"
    assert digit_at(x, 1) == 9
    assert digit_at(P("0.57"), 2) == 7
    assert digit_at(P("5.678"), 0) == 5


def test_compare():
    assert cmp_exact(P("0.57"), P("0.58")) == -1
    assert cmp_exact(ScaledDecimal(7, 1), ScaledDecimal(70, 2)) == 0
    assert ScaledDecimal(7, 1) == ScaledDecimal(70, 2)
    assert hash(ScaledDecimal(7, 1)) == hash(ScaledDecimal(70, 2))
    assert cmp_exact(ScaledDecimal(-4), P("-3.087")) == -1


def test_parse_forms():
    assert P("(-2).443") == P("-1.557")
    assert P("−2.5") == P("-2.5")
    assert P(".5").to_fraction() == Fraction(1, 2)
    with pytest.raises(ValueError):
        P("1.2.3")
    with pytest.raises(ValueError):
        ScaledDecimal(1, -1)


@given(scaled, st.integers(0, 8))
def test_truncate_brackets_value(a, k):
    t = truncate(a, k)
    assert t.scale == k
    assert t.to_fraction() <= a.to_fraction() < t.to_fraction() + Fraction(1, 10**k)


@given(scaled, st.integers(1, 8))
def test_digit_is_last_mantissa_digit(a, k):
    assert digit_at(a, k) == truncate(a, k).mantissa % 10
    assert 0 <= digit_at(a, k) <= 9


@given(scaled, scaled)
def test_ops_match_fractions(a, b):
    fa, fb = a.to_fraction(), b.to_fraction()
    assert add_exact(a, b).to_fraction() == fa + fb
    assert sub_exact(a, b).to_fraction() == fa - fb
    assert mul_exact(a, b).to_fraction() == fa * fb
    assert cmp_exact(a, b) == (fa > fb) - (fa < fb)


@given(scaled)
def test_string_round_trip(a):
    assert P(str(a)) == a
    assert P(str(a)).scale == a.scale
