import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pentagram.errors import DivisionByZero, FieldConstructionError, MixedFieldContexts
from pentagram.fields import (
    GF, QQ, builtin_modulus, is_irreducible, parse_element, parse_field,
)


def test_inverse_examples():
    for fld in (QQ, GF(7), GF(3, 2)):
        assert fld.one.inverse() == fld.one
    assert GF(7)(2).inverse() == GF(7)(4)
    assert QQ.parse("1/3") + QQ.parse("1/6") == QQ.parse("1/2")
    assert str(QQ.parse("2/6")) == "1/3"


def test_division_by_zero_and_mixed_contexts():
    with pytest.raises(DivisionByZero):
        GF(7).zero.inverse()
    with pytest.raises(DivisionByZero):
        QQ.one / QQ.zero
    with pytest.raises(MixedFieldContexts):
        GF(7).one + GF(11).one


def test_prime_field_against_integers(rng):
    p = 101
    F = GF(p)
    for _ in range(200):
        a, b = rng.randrange(p), rng.randrange(1, p)
        assert (F(a) * F(b)).value == a * b % p
        assert (F(a) - F(b)).value == (a - b) % p
        assert (F(a) / F(b)).value == a * pow(b, -1, p) % p


@given(st.fractions(), st.fractions(), st.fractions())
@settings(max_examples=200, deadline=None)
def test_rationals_match_fraction(a, b, c):
    A, B, C = (QQ.parse(f"{x.numerator}/{x.denominator}") for x in (a, b, c))
    assert str(A * B + C) == str(a * b + c)
    assert str(A - B) == str(a - b)
    if b:
        assert str(A / B) == str(Fraction(a) / b)


@pytest.mark.parametrize("desc", ["7", "11", "2^3", "3^2", "5^2", "11^2", "13^4"])
def test_field_axioms(desc):
    F = parse_field(desc)
    r = random.Random(desc)
    for _ in range(60):
        a, b, c = (F.random_element(r) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == F.zero
        if a:
            assert a * a.inverse() == F.one


def test_extension_field_order_and_frobenius():
    F = GF(5, 2)
    elems = F.elements()
    assert len(elems) == 25 == len(set(elems))
    # x^q = x for every element, and the multiplicative group is cyclic of order 24
    assert all(x ** 25 == x for x in elems)
    g = F.element_from_raw(F.p)  # the class of t
    assert len({g ** k for k in range(24)}) == 24


def test_builtin_moduli_are_irreducible():
    for p in (2, 3, 5, 7, 11, 13):
        for r in (1, 2, 3, 4):
            mod = builtin_modulus(p, r)
            assert is_irreducible(mod, p)


def test_reducible_modulus_rejected():
    with pytest.raises(FieldConstructionError):
        GF(5, 2, modulus=(1, 0, 1))   # t^2 + 1 = (t - 2)(t + 2) mod 5


@pytest.mark.parametrize("desc", ["Q", "7", "3^2", "121"])
def test_element_text_roundtrip(desc):
    F = parse_field(desc)
    r = random.Random(1)
    for _ in range(30):
        a = F.random_element(r)
        b = parse_element(str(a))
        assert b == a and str(b) == str(a)


def test_parse_field_descriptions():
    assert parse_field("Q") is QQ
    assert parse_field("121") is parse_field("11^2")
    assert parse_field("13").describe() == "13"
    with pytest.raises(FieldConstructionError):
        parse_field("12")
