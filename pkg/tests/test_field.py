from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from canonform.errors import DivisionByZero, FieldMismatch, ParseError, ZeroDenominator
from canonform.field import GF, QQ, FieldKind, FieldSpec, Scalar, arith, is_prime, parse_field, parse_scalar

from conftest import FIELDS


def test_gf7_products_and_inverse():
    F = GF(7)
    assert arith(Scalar(F, 3), Scalar(F, 5), "mul") == Scalar(F, 1)
    assert arith(Scalar(F, 1), Scalar(F, 3), "div") == Scalar(F, 5)


def test_rational_sum():
    assert arith(Scalar(QQ, Fraction(1, 2)), Scalar(QQ, Fraction(1, 3)), "add") == Scalar(QQ, Fraction(5, 6))


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        arith(Scalar(GF(5), 2), Scalar(GF(5), 0), "div")
    with pytest.raises(ZeroDivisionError):
        Scalar(QQ, 1) / Scalar(QQ, 0)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        Scalar(GF(3), 1) + Scalar(GF(5), 1)
    with pytest.raises(FieldMismatch):
        Scalar(GF(3), 1) < Scalar(QQ, 1)


@pytest.mark.parametrize("text,field,expected", [
    ("−3/2", QQ, Fraction(-3, 2)),
    ("-3/2", QQ, Fraction(-3, 2)),
    ("6/4", QQ, Fraction(3, 2)),
    ("9", GF(7), 2),
    ("-1", GF(7), 6),
])
def test_parse_scalar(text, field, expected):
    assert parse_scalar(text, field).value == expected


def test_parse_scalar_errors():
    with pytest.raises(ParseError):
        parse_scalar("1/2", GF(7))
    with pytest.raises(ZeroDenominator):
        parse_scalar("1/0", QQ)
    with pytest.raises(ParseError):
        parse_scalar("x", QQ)
    with pytest.raises(ParseError):
        parse_scalar("1.5", QQ)


def test_composite_modulus_rejected():
    for bad in (0, 1, 4, 9, 15, 561):
        with pytest.raises(ValueError):
            GF(bad)
    with pytest.raises(ValueError):
        FieldSpec(FieldKind.RATIONALS, 5)


def test_primality_agrees_with_sieve():
    sieve = [True] * 3000
    sieve[0] = sieve[1] = False
    for i in range(2, 3000):
        if sieve[i]:
            for j in range(i * i, 3000, i):
                sieve[j] = False
    assert [n for n in range(3000) if is_prime(n)] == [n for n in range(3000) if sieve[n]]
    assert is_prime(1_000_000_007)
    assert not is_prime(1_000_000_007 * 998_244_353)


def test_parse_field():
    assert parse_field("q") == QQ
    assert parse_field("gf 7") == GF(7) == parse_field("gf7") == parse_field("GF(7)")
    with pytest.raises(ParseError):
        parse_field("gf 8")


def _elements(field):
    if field.is_finite:
        return st.integers(0, field.modulus - 1)
    return st.fractions(max_denominator=50).filter(lambda f: abs(f.numerator) < 10**6)


@pytest.mark.parametrize("field", FIELDS, ids=repr)
def test_field_axioms(field):
    @given(_elements(field), _elements(field), _elements(field))
    def check(a, b, c):
        a, b, c = Scalar(field, a), Scalar(field, b), Scalar(field, c)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        assert a - a == Scalar(field, 0)
        if b:
            assert (a / b) * b == a

    check()


@pytest.mark.parametrize("field", FIELDS, ids=repr)
def test_canonicalization_idempotent(field):
    @given(st.integers(-10**6, 10**6), st.integers(1, 1000))
    def check(num, den):
        if field.is_finite and den % field.modulus == 0:
            return
        x = field(Fraction(num, den))
        assert field(x) == x
        if field.is_finite:
            assert 0 <= x < field.modulus
        else:
            assert x.denominator > 0

    check()


def test_is_prime_beyond_fixed_bases():
    assert is_prime(2**89 - 1) and is_prime(2**127 - 1)
    assert not is_prime((2**89 - 1) * (2**61 - 1))
    assert not is_prime((2**45 + 59) ** 2)
