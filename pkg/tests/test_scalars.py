"""Gaussian rational arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quadricmaps.scalars import GaussianRational, I, ONE, ZERO, format_scalar, parse_scalar


def gr(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


small_fractions = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)
gaussians = st.builds(GaussianRational, small_fractions, small_fractions)


def test_construction_and_of():
    assert GaussianRational.of(3) == gr(3)
    assert GaussianRational.of(Fraction(1, 2)) == gr(Fraction(1, 2))
    x = gr(1, 2)
    assert GaussianRational.of(x) is x


def test_basic_arithmetic():
    assert gr(1, 2) + gr(3, -1) == gr(4, 1)
    assert gr(1, 2) * gr(1, -2) == gr(5)
    assert I * I == gr(-1)
    assert (gr(1, 1) / gr(1, 1)) == ONE
    assert 2 - gr(1, 1) == gr(1, -1)
    assert gr(3, 4) / 5 == gr(Fraction(3, 5), Fraction(4, 5))


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_powers():
    assert gr(1, 1) ** 2 == gr(0, 2)
    assert gr(2) ** 0 == ONE
    assert I ** 3 == -I


def test_conj_abs2_sign():
    x = gr(3, -4)
    assert x.conj() == gr(3, 4)
    assert x.abs2() == 25
    assert gr(-2).sign() == -1
    assert ZERO.sign() == 0
    with pytest.raises(ValueError):
        I.sign()


def test_real_or_raise():
    assert gr(Fraction(7, 3)).real_or_raise() == Fraction(7, 3)
    with pytest.raises(ValueError):
        gr(1, 1).real_or_raise()


@given(gaussians, gaussians)
def test_mul_commutes(x, y):
    assert x * y == y * x


@given(gaussians, gaussians, gaussians)
def test_distributivity(x, y, z):
    assert x * (y + z) == x * y + x * z


@given(gaussians)
def test_conj_is_involution(x):
    assert x.conj().conj() == x
    assert (x * x.conj()).im == 0


@given(gaussians)
def test_format_parse_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


def test_format_examples():
    assert format_scalar(gr(Fraction(1, 2), Fraction(-3, 4))) == "1/2-3/4*i"
    assert format_scalar(ZERO) == "0"
    assert format_scalar(I) == "i"
    assert parse_scalar("-i") == -I
    assert parse_scalar("2") == gr(2)
