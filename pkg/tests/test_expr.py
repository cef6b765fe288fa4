from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drcalc.exact_scaled import ScaledDecimal
from drcalc.expr import Binary, Call, Const, Number, Paren, ParseError, Unary, parse_expr, render, to_real

N = lambda s: Number(ScaledDecimal.parse(s))


def test_documented_shapes():
    assert parse_expr("pi + sqrt(2)") == Binary("+", Const("pi"), Unary("sqrt", N("2")))
    e = parse_expr("glb(1/3, 0.333, 0.3334)")
    assert isinstance(e, Call) and e.name == "glb" and len(e.args) == 3


def test_syntax_error_offset():
    with pytest.raises(ParseError) as info:
        parse_expr("1 + * 2")
    assert info.value.offset == 4
    assert "number" in info.value.expected


def test_byte_offsets_with_unicode():
    with pytest.raises(ParseError) as info:
        parse_expr("−1 + )")
    assert info.value.offset == len("−1 + ".encode())


def test_precedence_and_associativity():
    assert parse_expr("1 - 2 - 3") == Binary("-", Binary("-", N("1"), N("2")), N("3"))
    assert parse_expr("1 + 2 * 3") == Binary("+", N("1"), Binary("*", N("2"), N("3")))
    assert parse_expr("-2 * 3") == Binary("*", Unary("neg", N("2")), N("3"))
    assert parse_expr("(1 + 2) * 3") == Binary("*", Paren(Binary("+", N("1"), N("2"))), N("3"))


def test_literals():
    assert parse_expr("(-2).443") == N("(-2).443")
    assert parse_expr("( -2 ).443") == N("(-2).443")
    assert to_real(parse_expr("-2.443")).render(3) == "(-3).557"
    assert to_real(parse_expr("(-2).443")).fraction == Fraction(-1557, 1000)


@pytest.mark.parametrize("bad", ["", "1 +", "sqrt 2", "pair(1)", "glb()", "foo(1)", "1 2", "1 $ 2", "(1"])
def test_rejects(bad):
    with pytest.raises(ParseError):
        parse_expr(bad)


def test_evaluation():
    assert to_real(parse_expr("1/3 + 2/3")).fraction == 1
    assert to_real(parse_expr("recip(4)")).fraction == Fraction(1, 4)
    assert to_real(parse_expr("pair(0.1, 0.2)")).render(6) == "0.120000"


literals = st.builds(ScaledDecimal, st.integers(-10**4, 10**4), st.integers(0, 3)).map(Number)
leaves = st.one_of(literals, st.sampled_from([Const("pi"), Const("e"), Const("sqrt2")]))


def extend(children):
    return st.one_of(
        st.builds(Unary, st.sampled_from(["neg", "recip", "sqrt"]), children),
        st.builds(Binary, st.sampled_from(["+", "-", "*", "/"]), children, children),
        st.builds(Paren, children),
        st.builds(lambda a, b: Call("pair", (a, b)), children, children),
        st.builds(lambda xs: Call("glb", tuple(xs)), st.lists(children, min_size=1, max_size=3)),
    )


exprs = st.recursive(leaves, extend, max_leaves=12)


@given(exprs)
def test_render_round_trip(e):
    text = render(e)
    assert render(parse_expr(text)) == text
