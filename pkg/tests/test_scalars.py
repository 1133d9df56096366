import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitoct.scalars import (
    HALF,
    I,
    INV_SQRT2,
    ONE,
    SQRT2,
    ZERO,
    ZETA,
    DivisionByZero,
    ExactScalar,
)

rationals = st.fractions(min_value=-30, max_value=30, max_denominator=6)
scalars = st.builds(ExactScalar, rationals, rationals, rationals, rationals)


def test_defining_relation():
    assert ZETA**4 == ExactScalar(-1)
    assert ZETA**8 == ONE


def test_i_squares_to_minus_one():
    assert I * I == ExactScalar(-1)


def test_sqrt2_squares_to_two():
    assert SQRT2 * SQRT2 == ExactScalar(2)
    assert SQRT2 * INV_SQRT2 == ONE


def test_unit_modulus_of_zeta():
    assert ZETA * ZETA.conj() == ONE


def test_conj_example():
    x = (ONE + I) * INV_SQRT2
    assert x.conj() == (ONE - I) * INV_SQRT2


def test_conj_is_zeta_inversion():
    assert ZETA.conj() == ZETA**7
    assert ZETA.conj() == -(ZETA**3)


@given(scalars, scalars)
@settings(max_examples=60)
def test_conj_multiplicative(x, y):
    assert (x * y).conj() == x.conj() * y.conj()


@given(scalars, scalars, scalars)
@settings(max_examples=60)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z


@given(scalars)
@settings(max_examples=100)
def test_inverse_property(x):
    if not x:
        with pytest.raises(DivisionByZero):
            x.inv()
    else:
        assert x * x.inv() == ONE


@given(scalars)
@settings(max_examples=60)
def test_galois_automorphisms(x):
    for k in (1, 3, 5, 7):
        assert x.galois(k).galois(k) in (x, x.galois((k * k) % 8))
    assert x.galois(7) == x.conj()


@given(scalars, scalars)
@settings(max_examples=60)
def test_galois_is_ring_map(x, y):
    for k in (3, 5, 7):
        assert (x * y).galois(k) == x.galois(k) * y.galois(k)
        assert (x + y).galois(k) == x.galois(k) + y.galois(k)


def test_field_norm_rational_and_positive():
    x = ExactScalar(1, 2, Fraction(-1, 3), 5)
    n = x.field_norm()
    assert isinstance(n, Fraction)
    # The norm of a nonzero element never vanishes.
    assert n != 0


def test_to_float_values():
    assert ZETA.to_float() == pytest.approx(complex(math.sqrt(0.5), math.sqrt(0.5)))
    assert I.to_float() == pytest.approx(1j)
    assert SQRT2.to_float() == pytest.approx(math.sqrt(2))
    assert HALF.to_float() == pytest.approx(0.5)


@given(scalars, scalars)
@settings(max_examples=60)
def test_to_float_is_homomorphic(x, y):
    assert (x * y).to_float() == pytest.approx(x.to_float() * y.to_float(), abs=1e-9)
    assert (x + y).to_float() == pytest.approx(x.to_float() + y.to_float(), abs=1e-9)


def test_serialization_format():
    x = ExactScalar(Fraction(-1, 2), 3, 0, Fraction(-2, 3))
    assert str(x) == "-1/2 + 3*z + 0*z2 + -2/3*z3"


@given(scalars)
@settings(max_examples=60)
def test_serialization_roundtrip(x):
    assert ExactScalar.from_str(str(x)) == x


def test_from_str_rejects_malformed():
    with pytest.raises(ValueError):
        ExactScalar.from_str("1 + 2*z")
    with pytest.raises(ValueError):
        ExactScalar.from_str("1 + 2*z + 3*z3 + 4*z2")


def test_rational_interop():
    assert ExactScalar(3) == 3
    assert ExactScalar(Fraction(1, 2)) == Fraction(1, 2)
    assert 1 + ZETA - ZETA == ONE
    assert (2 * HALF) == 1
    assert (ONE / 2) == HALF
    assert (1 / (SQRT2 * INV_SQRT2)) == 1


def test_is_rational_and_as_fraction():
    assert ExactScalar(Fraction(7, 3)).as_fraction() == Fraction(7, 3)
    with pytest.raises(ValueError):
        ZETA.as_fraction()
    assert not ZETA.is_rational
    assert ZERO.is_rational


def test_zeta_power_table():
    for k in range(-8, 16):
        assert ExactScalar.zeta_power(k) == ZETA**k if k >= 0 else ZETA.inv() ** (-k)
