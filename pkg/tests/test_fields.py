"""Field-variant axioms and representation round trips."""

import random
from fractions import Fraction

import pytest

import kernel_props as kp
from septiq.family import alpha_number_field
from septiq.fields import (
    FieldElement,
    NumberField,
    PrimeField,
    QQ,
    QuadraticExtField,
    RationalFunctionField,
)


def _variants():
    K = alpha_number_field()
    return [
        ("rationals", QQ),
        ("prime-11", PrimeField(11)),
        ("prime-31991", PrimeField(31991)),
        ("number-field", K),
        ("quadratic-ext", QuadraticExtField(K, K.from_int(5))),
        ("rational-functions", RationalFunctionField(QQ, "alpha")),
    ]


@pytest.mark.parametrize("name,field", _variants())
def test_axioms_random_triples(name, field):
    # >= 10^3 triples per variant is the contract floor
    kp.field_axioms(field, random.Random(hash(name) & 0xFFFF), triples=1000)


def test_characteristics():
    assert QQ.characteristic == 0
    assert PrimeField(11).characteristic == 11
    assert alpha_number_field().characteristic == 0


def test_prime_field_wraps():
    K = PrimeField(7)
    a = FieldElement(K, K.from_int(10))
    assert a.value == 3
    assert (a + a).value == 6
    assert (a * a).value == 2


def test_number_field_reduction():
    K = alpha_number_field()
    a = K.gen
    # the defining relation: 7a^3 + 7a + 1 = 0
    assert (7 * a**3 + 7 * a + 1).value == K.zero
    assert K.eq((a**3).value, ((-a * 7 - 1) / 7).value)


def test_number_field_inverse_random():
    K = alpha_number_field()
    rng = random.Random(5)
    for _ in range(200):
        v = K.random_element(rng)
        if K.is_zero(v):
            continue
        assert K.eq(K.mul(v, K.inv(v)), K.one)


def test_quadratic_ext_square_root():
    base = alpha_number_field()
    sq = base.from_int(5)
    E = QuadraticExtField(base, sq)
    beta = E.gen
    assert E.eq((beta * beta).value, E.from_base(sq))


def test_rational_function_field_cancellation():
    F = RationalFunctionField(QQ, "t")
    rng = random.Random(6)
    a = F.random_element(rng)
    b = F.random_element(rng)
    if not F.is_zero(b):
        # (a*b)/b must normalize back to a
        assert F.eq(F.div(F.mul(a, b), b), a)


def test_describe_round_trip():
    for _, field in _variants():
        d = field.describe()
        assert isinstance(d, dict) and "kind" in d


def test_from_fraction():
    K = PrimeField(11)
    # 1/2 mod 11 = 6
    assert K.from_fraction(Fraction(1, 2)) == 6
    assert QQ.from_fraction(Fraction(3, 4)) == Fraction(3, 4)
