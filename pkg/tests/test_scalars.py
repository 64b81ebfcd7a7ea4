from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bihomns import DivisionByZero, FieldMismatch, ParseError, ValidationError
from bihomns.scalars import GF2, GF3, QQ, Field, Scalar, scalar_add, scalar_inv, scalar_mul


def q(text):
    return Scalar.parse(text, QQ)


def gf(p, v):
    return Scalar.of(v, Field.prime(p))


def test_rational_examples():
    assert scalar_add(q("1/2"), q("1/3")) == q("5/6")
    assert scalar_mul(q("2/3"), q("3/4")) == q("1/2")
    assert scalar_inv(q("2/3")) == q("3/2")
    assert scalar_inv(q("1")) == q("1")
    assert scalar_add(q("0"), q("-7/4")) == q("-7/4")


def test_prime_field_examples():
    assert scalar_add(gf(3, 2), gf(3, 2)) == gf(3, 1)
    assert scalar_mul(gf(5, 3), gf(5, 4)) == gf(5, 2)
    assert scalar_inv(gf(7, 3)) == gf(7, 5)


def test_errors():
    with pytest.raises(FieldMismatch):
        scalar_add(gf(3, 1), gf(5, 1))
    with pytest.raises(FieldMismatch):
        scalar_mul(q("1"), gf(2, 1))
    with pytest.raises(DivisionByZero):
        scalar_inv(q("0"))
    with pytest.raises(DivisionByZero):
        scalar_inv(gf(7, 14))
    with pytest.raises(ValidationError):
        Field.prime(4)
    with pytest.raises(ValidationError):
        Field.prime(263)
    with pytest.raises(ParseError):
        Scalar.parse("1/0", QQ)
    with pytest.raises(ParseError):
        Scalar.parse("6/-4", QQ)
    with pytest.raises(ParseError):
        Field.parse("GF(two)")


def test_normal_form():
    x = q("-6/4")
    assert x.value == Fraction(-3, 2) and str(x) == "-3/2"
    assert str(q("4/2")) == "2"
    assert str(gf(3, -1)) == "2 mod 3"
    assert Scalar.parse("5 mod 3") == gf(3, 2)
    assert GF2.element(Fraction(1, 3)) == 1
    with pytest.raises(DivisionByZero):
        GF3.element(Fraction(1, 3))


rationals = st.fractions(max_denominator=50).filter(lambda f: abs(f.numerator) < 10**6)
fields = st.sampled_from([QQ, GF2, GF3, Field.prime(7), Field.prime(257)])


@st.composite
def triples(draw):
    F = draw(fields)
    vals = st.integers(-300, 300) if F.p else rationals
    return F, [Scalar.of(draw(vals), F) for _ in range(3)]


@given(triples())
def test_field_axioms(data):
    F, (a, b, c) = data
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a and a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == Scalar.of(0, F)
    if not a.is_zero():
        assert a * a.inverse() == Scalar.of(1, F)


@given(triples())
def test_text_round_trip(data):
    F, xs = data
    for x in xs:
        assert Scalar.parse(str(x), F) == x
        assert F.parse_value(F.format_value(x.value)) == x.value
