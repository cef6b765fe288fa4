import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drcalc.arclength import pi_real
from drcalc.computable import e_real, sqrt_rational
from drcalc.constructions import (
    CauchyInput,
    ConstructionError,
    DedekindCut,
    MalformedPairing,
    cantor_pair,
    cantor_unpair,
    encode_integer,
    enclosure_real,
    from_cauchy,
    from_dedekind,
    glb_finite,
    glb_horizon,
)
from drcalc.decimal_stream import (
    Order,
    as_algorithmic,
    cmp_with_fuel,
    from_digits,
    from_fraction,
    from_rational,
    from_scaled,
)
from drcalc.exact_scaled import ScaledDecimal

from helpers import DigitSource

SQRT2_CUT = DedekindCut(lambda q: q < 0 or q * q < 2, Fraction(0), Fraction(2))


# -- Dedekind ------------------------------------------------------------------------


def test_sqrt2_cut():
    d = from_dedekind(SQRT2_CUT)
    assert d.render(8) == "1.41421356"
    for k in range(0, 25, 3):
        t = Fraction(d.floor_scaled(k), 10**k)
        assert SQRT2_CUT.in_lower(t)
        assert not SQRT2_CUT.in_lower(t + Fraction(1, 10**k))


def test_cut_at_one_with_open_upper_class_gives_one():
    # A = {q <= 1}: B = {q > 1} has no least element, so this is the number 1
    d = from_dedekind(DedekindCut(lambda q: q <= 1, Fraction(0), Fraction(2)))
    assert d.render(12) == "1.000000000000"


def test_ill_formed_cut_is_detected():
    # A = {q < 5}: B has least element 5, the digit search runs into 4.999...
    d = from_dedekind(DedekindCut(lambda q: q < 5, Fraction(0), Fraction(9)), nines_limit=30)
    assert d.integer_part == 4
    with pytest.raises(ConstructionError, match="smallest element 5"):
        d.floor_scaled(40)


def test_inconsistent_witnesses():
    with pytest.raises(ConstructionError):
        from_dedekind(DedekindCut(lambda q: q < 1, Fraction(2), Fraction(3)))
    with pytest.raises(ConstructionError):
        from_dedekind(DedekindCut(lambda q: q < 1, Fraction(0), Fraction(1, 2)))


@given(st.fractions(min_value=-30, max_value=30, max_denominator=99))
def test_rational_cuts(q):
    d = from_dedekind(DedekindCut(lambda r: r <= q, q - 1, q + 1))
    assert d.render(10) == from_fraction(q).render(10)


# -- Cauchy ------------------------------------------------------------------------


def test_flickering_sequence_identified_with_one():
    c = CauchyInput(lambda n: 1 + Fraction((-1) ** n, 10**n), lambda s: s + 1)
    x = from_cauchy(c)
    assert x.render(6) == "1.000000"
    assert x.fraction == 1


def test_constant_sequence():
    x = from_cauchy(CauchyInput(lambda n: Fraction(22, 7), lambda s: 0))
    assert x.render(12) == "3.142857142857"


def test_e_as_cauchy_limit():
    assert e_real().render(9) == "2.718281828"


def test_cauchy_output_near_terms():
    terms = lambda n: sum(Fraction(1, 2**i) for i in range(n + 1)) / 3
    modulus = lambda s: 4 * s + 4
    x = from_cauchy(CauchyInput(terms, modulus))
    for k in range(8):
        q = terms(modulus(k + 2))
        assert abs(Fraction(x.floor_scaled(k), 10**k) - q) <= Fraction(2, 10 ** (k + 2)) + Fraction(1, 10**k)


def test_modulus_violation_detected():
    bad = CauchyInput(lambda n: Fraction(n % 2), lambda s: s)
    with pytest.raises(ConstructionError):
        from_cauchy(bad).floor_scaled(3)


def test_decreasing_modulus_detected():
    c = CauchyInput(lambda n: Fraction(1, n), lambda s: 10 ** max(1, 60 - s))
    with pytest.raises(ConstructionError, match="monotone"):
        from_cauchy(c).floor_scaled(2)


def test_enclosure_real_lookahead_hands_over_blocks():
    calls = []

    def enclose(s):
        calls.append(s)
        q = Fraction(1, 7)
        return q - Fraction(1, 10**s), q + Fraction(1, 10**s)

    x = enclosure_real(enclose, lookahead=10)
    x.render(3)
    n = len(calls)
    x.render(9)
    assert len(calls) == n


# -- glb ----------------------------------------------------------------------------


def test_glb_examples():
    pi, e = pi_real(), e_real()
    half = from_scaled(ScaledDecimal.parse("2.5"))
    assert glb_finite([pi, e, half]).render(10) == "2.5000000000"
    assert glb_finite([pi]) is pi
    g = glb_finite([from_rational(1, 3), from_scaled(ScaledDecimal.parse("0.333")),
                    from_scaled(ScaledDecimal.parse("0.3334"))])
    assert g.fraction == Fraction(333, 1000)
    with pytest.raises(ValueError):
        glb_finite([])


def test_glb_of_algorithmic_values():
    xs = [DigitSource(s, a).real() for s, a in ((1, 0), (2, -1), (3, -1), (4, 2))]
    g = glb_finite(xs)
    rendered = [x.render(20) for x in xs]
    assert g.render(20) in rendered
    for x in xs:
        assert cmp_with_fuel(g, x, 20).order is not Order.GREATER


def test_glb_horizon_is_glb_of_prefix():
    gen = (from_rational(1, n) for n in range(1, 10**9))
    assert glb_horizon(gen, 50).fraction == Fraction(1, 50)


# -- Cantor pairing ----------------------------------------------------------------------


def test_pair_examples():
    z = cantor_pair(from_scaled(ScaledDecimal.parse("0.1")), from_scaled(ScaledDecimal.parse("0.2")))
    assert z.render(9) == "0.120000000"
    zero = from_rational(0, 1)
    assert cantor_pair(zero, zero).render(12) == "0.000000000000"
    x, y = from_scaled(ScaledDecimal.parse("2.5")), from_scaled(ScaledDecimal.parse("(-1).25"))
    u, v = cantor_unpair(cantor_pair(x, y))
    assert u.render(10) == "2.5000000000" and v.render(10) == "(-1).2500000000"


def test_encode_integer():
    assert encode_integer(0) == [0, 0]
    assert encode_integer(2) == [0, 1, 1, 0]
    assert encode_integer(-1) == [1, 1, 0]


def test_pair_is_injective_on_a_corpus():
    rng = random.Random(5)
    seen = {}
    for _ in range(300):
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        x = from_fraction(Fraction(rng.randint(0, 99), 100) + a)
        y = from_fraction(Fraction(rng.randint(0, 99), 100) + b)
        key = (x.render(2), y.render(2))
        z = cantor_pair(x, y).render(60)
        assert seen.setdefault(z, key) == key


def test_malformed_pairing():
    bad_sign = from_digits(0, lambda j: 2 if j == 3 else 0)
    with pytest.raises(MalformedPairing) as info:
        cantor_unpair(bad_sign)
    assert info.value.position == 3
    bad_unary = from_digits(0, lambda j: {3: 0, 6: 1, 9: 5}.get(j, 0))
    with pytest.raises(MalformedPairing) as info:
        cantor_unpair(bad_unary)
    assert info.value.position == 9
    with pytest.raises(MalformedPairing):
        cantor_unpair(from_rational(3, 2))


@given(st.integers(0, 10**6), st.integers(0, 10**6), st.integers(-3, 3), st.integers(-3, 3))
def test_pair_round_trip(sa, sb, a0, b0):
    x, y = DigitSource(sa, a0).real(), DigitSource(sb, b0).real()
    z = cantor_pair(x, y)
    u, v = cantor_unpair(z)
    assert (u.render(25), v.render(25)) == (x.render(25), y.render(25))
    assert cantor_pair(u, v).render(75) == z.render(75)
