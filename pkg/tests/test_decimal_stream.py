import threading
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drcalc.decimal_stream import (
    Backing,
    DomainError,
    Order,
    SignKind,
    Undetermined,
    as_algorithmic,
    cmp_with_fuel,
    digit_outcome,
    Determined,
    Exhausted,
    format_dump,
    from_digits,
    from_fraction,
    from_periodic,
    from_rational,
    from_scaled,
    from_truncations,
    parse_dump,
    rational_period,
    shift,
    sign_with_fuel,
)
from drcalc.exact_scaled import ScaledDecimal

from helpers import DigitSource, floor_at

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=500)


def test_long_division_examples():
    assert from_rational(1, 3).render(4) == "0.3333"
    assert from_scaled(ScaledDecimal(5, 1)).render(4) == "0.5000"
    assert from_rational(-1, 3).render(4) == "(-1).6666"
    assert from_rational(1, 3).backing is Backing.RATIONAL
    with pytest.raises(DomainError):
        from_rational(1, 0)


def test_digit_and_truncation():
    half = from_scaled(ScaledDecimal(5, 1))
    assert half.digit(7) == 0
    assert from_rational(1, 3).truncation(4) == ScaledDecimal(3333, 4)
    assert from_rational(-7, 2).digit(0) == -4


def test_period_of_one_seventh():
    assert rational_period(Fraction(1, 7)) == (0, 6)
    assert "".join(map(str, from_rational(1, 7).digits(12))) == "142857142857"
    assert rational_period(Fraction(1, 8)) == (3, 1)


def test_periodic_constructor():
    x = from_periodic(0, "1", "6")
    assert x.fraction == Fraction(1, 6)
    with pytest.raises(ValueError):
        from_periodic(0, "", "9")


@given(fractions)
def test_rational_expansion_has_no_nine_tail(q):
    x = from_fraction(q)
    pre, per = rational_period(q)
    ds = x.digits(pre + 3 * per)
    assert set(ds[pre:]) != {9}
    assert x.floor_scaled(len(ds)) == floor_at(q, len(ds))


@given(fractions, st.integers(0, 10), st.integers(1, 10))
def test_truncations_are_nested(q, k, extra):
    x = from_fraction(q)
    j = k + extra
    gap = Fraction(x.floor_scaled(j), 10**j) - Fraction(x.floor_scaled(k), 10**k)
    assert 0 <= gap < Fraction(1, 10**k)


def test_memo_is_stable_and_thread_safe():
    calls = []

    def digit(j):
        calls.append(j)
        return (3 * j) % 10

    x = from_digits(2, digit, block=4)
    first = x.render(40)
    threads = [threading.Thread(target=x.render, args=(40 + i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert x.render(40) == first
    assert len(calls) == len(set(calls))


def test_algorithmic_copy_hides_backing():
    x = as_algorithmic(from_rational(1, 3))
    assert not x.is_exact and x.backing is Backing.ALGORITHMIC
    assert x.render(5) == "0.33333"


def test_digit_outcome():
    assert digit_outcome(from_rational(1, 3), 3) == Determined(3)

    def stuck(k):
        raise Undetermined(k + 10, k, "test")

    x = from_truncations(stuck, promise="never answers")
    assert digit_outcome(x, 2) == Exhausted(12)


def test_compare_examples():
    third = from_rational(1, 3)
    assert cmp_with_fuel(third, from_scaled(ScaledDecimal.parse("0.3334")), 8).order is Order.LESS
    assert cmp_with_fuel(third, third, 9).order is Order.INDISTINGUISHABLE
    assert cmp_with_fuel(third, third, 9).depth == 9
    half = from_scaled(ScaledDecimal.parse("0.5"))
    assert cmp_with_fuel(half, from_scaled(ScaledDecimal.parse("0.4999")), 8).order is Order.GREATER


@given(st.integers(-300, 300), st.integers(-300, 300), st.integers(0, 3), st.integers(0, 3))
def test_compare_agrees_with_exact_order(m, n, i, j):
    a, b = ScaledDecimal(m, i), ScaledDecimal(n, j)
    c = cmp_with_fuel(from_scaled(a), from_scaled(b), 8)
    expected = {-1: Order.LESS, 0: Order.INDISTINGUISHABLE, 1: Order.GREATER}[a.cmp(b)]
    assert c.order is expected


def test_signs():
    from drcalc.arclength import pi_real

    assert sign_with_fuel(pi_real()).kind is SignKind.POSITIVE
    assert sign_with_fuel(from_rational(-1, 3)).kind is SignKind.NEGATIVE
    zero = sign_with_fuel(from_rational(0, 1), 50)
    assert zero.kind is SignKind.ZERO_AT_HORIZON and zero.depth == 50
    tiny = DigitSource(5, 0, "0000001").real()
    s = sign_with_fuel(tiny, 100)
    assert s.kind is SignKind.POSITIVE and s.depth == 7


def test_shift():
    x = as_algorithmic(from_rational(1, 7))
    assert shift(x, 3).render(3) == "142.857"
    assert shift(x, -2).render(6) == "0.001428"
    assert shift(from_rational(1, 8), 1).fraction == Fraction(10, 8)


def test_dump_round_trip():
    x = from_rational(-22, 7)
    text = format_dump(x, 120)
    assert text.splitlines()[0] == "D10 v1 a0=-4"
    assert all(len(line) <= 50 for line in text.splitlines()[1:])
    a0, body = parse_dump(text)
    assert a0 == -4 and body == "".join(map(str, x.digits(120)))
    with pytest.raises(ValueError):
        parse_dump("D11 v1 a0=0\n")


def test_operators():
    a, b = from_rational(1, 3), from_rational(2, 3)
    assert (a + b).fraction == 1
    assert (a - b).fraction == Fraction(-1, 3)
    assert (a * 3).fraction == 1
    assert (1 / a).fraction == 3
    assert (-a).fraction == Fraction(-1, 3)
    with pytest.raises(TypeError):
        a + "x"
