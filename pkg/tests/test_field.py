from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from algeo.errors import DivisionByZero, MixedFields, ParseError, ValidationError
from algeo.field import GF, QQ, FieldSpec, field_from_string, scalar_arith, scalar_from_string

F7 = GF(7)


def test_rational_addition():
    assert scalar_arith("add", QQ("1/2"), QQ("1/3")) == QQ("5/6")


def test_inverse_mod_seven():
    assert scalar_arith("inv", F7(3)).value == 5


@pytest.mark.parametrize("field", [QQ, F7])
def test_division_by_zero(field):
    with pytest.raises(DivisionByZero):
        scalar_arith("div", field(1), field(0))
    with pytest.raises(DivisionByZero):
        field(0).inv()


def test_parse_canonical():
    assert scalar_from_string(QQ, "-6/4").value == Fraction(-3, 2)
    assert scalar_from_string(F7, "10").value == 3
    assert scalar_from_string(F7, "-1/2").value == 3
    with pytest.raises(DivisionByZero):
        scalar_from_string(F7, "1/7")


@pytest.mark.parametrize("text", ["1.5", "", "a", "1/", "--1", "1/-2"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        scalar_from_string(QQ, text)


@pytest.mark.parametrize("p", [2, 3, 4, 9, 1])
def test_small_or_composite_modulus_rejected(p):
    with pytest.raises(ValidationError):
        FieldSpec("prime", p)


def test_two_and_three_invertible():
    for field in (QQ, GF(5), GF(7), GF(101)):
        assert (field(2) * field(2).inv()) == field(1)
        assert (field(3) * field(3).inv()) == field(1)


def test_mixed_fields():
    with pytest.raises(MixedFields):
        F7(1) + GF(11)(1)


def test_field_names():
    assert field_from_string("QQ") is QQ
    assert field_from_string("GF(7)") == F7
    assert field_from_string("F7") == F7
    assert field_from_string("prime:7") == F7
    with pytest.raises(ParseError):
        field_from_string("R")


def test_scalar_immutable_and_hashable():
    x = QQ("2/3")
    with pytest.raises(AttributeError):
        x.value = 1
    assert {x: 1}[QQ("4/6")] == 1


fractions = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)
residues = st.integers(0, 6)


@given(fractions, fractions, fractions)
def test_rational_axioms(a, b, c):
    a, b, c = QQ(a), QQ(b), QQ(c)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    if not b.is_zero():
        assert (a / b) * b == a


@given(residues, residues, residues)
def test_prime_axioms(a, b, c):
    a, b, c = F7(a), F7(b), F7(c)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F7(0)
    if not a.is_zero():
        assert a * a.inv() == F7(1)


@given(fractions)
def test_roundtrip_rational(a):
    text = QQ.format_raw(QQ.raw(a))
    assert scalar_from_string(QQ, text).value == a
    assert QQ.format_raw(scalar_from_string(QQ, text).value) == text


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(1, 10 ** 6).filter(lambda d: d % 7))
def test_roundtrip_prime(n, d):
    v = scalar_from_string(F7, f"{n}/{d}")
    assert 0 <= v.value < 7
    assert v * F7(d) == F7(n)
    assert scalar_from_string(F7, F7.format_raw(v.value)) == v
