import pytest
from hypothesis import given
from hypothesis import strategies as st

from toricliaison.poly import (
    ONE,
    ZERO,
    Bino,
    ClassEscape,
    ForeignVariable,
    Indivisible,
    LexOrder,
    Mono,
    Monomial,
    Zero,
    divide,
    from_terms,
    lcm,
    multiply,
    orient,
    parse_monomial,
    parse_poly,
    reorient,
    scale,
    variables_of,
)

VARS = (1, 2, 3, 4, 5)
exponents = st.dictionaries(st.sampled_from(VARS), st.integers(0, 3))
monomials = exponents.map(Monomial)
orders = st.permutations(VARS).map(LexOrder)


def m(text: str) -> Monomial:
    return parse_monomial(text)


def test_compare_examples():
    assert LexOrder([1, 2]).compare(m("e1"), m("e1")) == 0
    assert LexOrder([2, 1]).compare(m("e1^3"), m("e2")) == -1
    assert LexOrder([1, 2, 3]).compare(m("e1*e3"), m("e1*e2")) == -1


def test_default_order_puts_smallest_id_first():
    assert LexOrder.default([3, 1, 2]).priority == (1, 2, 3)


def test_foreign_variable():
    with pytest.raises(ForeignVariable):
        LexOrder([1, 2]).key(m("e3"))


def test_repeated_priority_rejected():
    with pytest.raises(ValueError):
        LexOrder([1, 1])


def test_lcm_and_divide_examples():
    assert lcm(m("e1*e2"), m("e2^2")) == m("e1*e2^2")
    assert divide(m("e1*e2"), m("e2")) == m("e1")
    with pytest.raises(Indivisible):
        divide(m("e1"), m("e2"))


def test_monomial_text_round_trip():
    for text in ("1", "e1", "e1*e3^2", "e2*e10"):
        assert str(parse_monomial(text)) == text
    assert ONE.is_one() and str(ONE) == "1"


def test_zero_exponents_dropped():
    assert Monomial({1: 0, 2: 1}) == m("e2")


def test_orient_examples():
    order = LexOrder([1, 2, 3, 4])
    assert orient(m("e1*e3"), m("e1*e3"), order) == ZERO
    assert orient(m("e1*e3"), m("e2*e4"), order) == Bino(m("e1*e3"), m("e2*e4"))
    assert orient(m("e2*e4"), m("e1*e3"), order) == Bino(m("e1*e3"), m("e2*e4"))


def test_reorient_under_new_order():
    b = Bino(m("e1*e3"), m("e2*e4"))
    assert reorient(b, LexOrder([4, 3, 2, 1])) == Bino(m("e2*e4"), m("e1*e3"))


def test_from_terms_class_membership():
    order = LexOrder(VARS)
    a, b = m("e1"), m("e2")
    assert from_terms([(1, a), (-1, a)], order) == ZERO
    assert from_terms([(-1, a)], order) == Mono(-1, a)
    assert from_terms([(-1, a), (1, b)], order) == Bino(a, b)
    with pytest.raises(ClassEscape):
        from_terms([(1, a), (1, b)], order)
    with pytest.raises(ClassEscape):
        from_terms([(2, a)], order)
    with pytest.raises(ClassEscape):
        from_terms([(1, a), (-1, b), (1, m("e3"))], order)


def test_binomial_times_binomial_escapes():
    order = LexOrder(VARS)
    p = Bino(m("e1"), m("e2"))
    q = Bino(m("e3"), m("e4"))
    with pytest.raises(ClassEscape):
        multiply(p, q, order)
    assert multiply(p, Mono(1, m("e5")), order) == Bino(m("e1*e5"), m("e2*e5"))
    assert multiply(p, ZERO, order) == ZERO


def test_parse_poly_and_variables():
    order = LexOrder([1, 2, 3, 4])
    p = parse_poly("e2*e4 - e1*e3", order)
    assert p == Bino(m("e1*e3"), m("e2*e4"))
    assert variables_of(p) == {1, 2, 3, 4}
    assert parse_poly("0", order) == ZERO
    assert parse_poly("-e3", order) == Mono(-1, m("e3"))
    assert isinstance(parse_poly("0", order), Zero)


@given(monomials, monomials, monomials, orders)
def test_lex_is_multiplicative(a, b, c, order):
    assert order.compare(a, b) == order.compare(a * c, b * c)


@given(monomials, orders)
def test_one_is_least(a, order):
    assert order.compare(ONE, a) <= 0


@given(monomials, monomials)
def test_divide_inverts_product(a, b):
    assert divide(a * b, b) == a
    assert b.divides(a * b)


@given(monomials, monomials)
def test_lcm_gcd_product(a, b):
    assert a.lcm(b) * a.gcd(b) == a * b
    assert a.divides(a.lcm(b)) and b.divides(a.lcm(b))
    assert a.coprime(b) == a.gcd(b).is_one()


@given(monomials, monomials, orders)
def test_orient_stable_and_antisymmetric(a, b, order):
    p = orient(a, b, order)
    assert p == orient(b, a, order)
    if a != b:
        assert order.greater(p.lead, p.trail)


@given(monomials, monomials, monomials, orders)
def test_scale_keeps_orientation(a, b, c, order):
    p = orient(a, b, order)
    assert scale(p, c) == orient(a * c, b * c, order)
