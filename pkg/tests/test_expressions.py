"""Expression grammar: parsing, printing, and their round trip."""

import random
from fractions import Fraction

import pytest

from quadricmaps.expressions import (
    ExpressionError,
    format_poly,
    parse_constant,
    parse_expression,
    parse_point,
)
from quadricmaps.polynomials import VariableSpace
from quadricmaps.scalars import GaussianRational, I


SP = VariableSpace(3)


def test_basic_terms():
    assert parse_expression("z1", SP) == SP.z(1)
    assert parse_expression("w", SP) == SP.w()
    assert parse_expression("i", SP) == SP.const(I)
    assert parse_expression("0", SP) == SP.zero()
    assert parse_expression("3/4", SP) == SP.const(Fraction(3, 4))


def test_component_style_expressions():
    p = parse_expression("z1 + 1/2*z1^2 - 1/4*i*w", SP)
    want = (
        SP.z(1)
        + (SP.z(1) * SP.z(1)).scale(Fraction(1, 2))
        - SP.w().scale(GaussianRational(0, Fraction(1, 4)))
    )
    assert p == want

    q = parse_expression("2*z2*(i+w)", SP)
    assert q == SP.z(2).scale(GaussianRational(0, 2)) + (SP.z(2) * SP.w()).scale(2)

    assert parse_expression("w^2", SP) == SP.w() * SP.w()
    assert parse_expression("-z1^3", SP) == -(SP.z(1) ** 3)


def test_precedence_and_parentheses():
    assert parse_expression("2*z1^2", SP) == (SP.z(1) ** 2).scale(2)
    assert parse_expression("(2*z1)^2", SP) == (SP.z(1) ** 2).scale(4)
    assert parse_expression("1 - 2 - 3", SP) == SP.const(-4)
    assert parse_expression("-z1*z2", SP) == -(SP.z(1) * SP.z(2))


def test_error_positions():
    with pytest.raises(ExpressionError) as exc:
        parse_expression("z9", SP)
    assert "z9" in str(exc.value) and exc.value.position == 2

    with pytest.raises(ExpressionError) as exc:
        parse_expression("(z1", SP)
    assert "')'" in str(exc.value) and exc.value.position == 3

    with pytest.raises(ExpressionError) as exc:
        parse_expression("1/0", SP)
    assert "denominator" in str(exc.value)

    with pytest.raises(ExpressionError) as exc:
        parse_expression("z1 z2", SP)
    assert "trailing" in str(exc.value) and exc.value.position == 3

    with pytest.raises(ExpressionError):
        parse_expression("2*", SP)
    with pytest.raises(ExpressionError):
        parse_expression("", SP)
    with pytest.raises(ExpressionError):
        parse_expression("z1 + $", SP)


def test_format_examples():
    assert format_poly(SP.zero()) == "0"
    assert format_poly(SP.one()) == "1"
    assert format_poly(SP.const(-I)) == "-i"
    p = SP.z(1).scale(GaussianRational(1, 1)) + SP.w().scale(Fraction(-1, 2))
    s = format_poly(p)
    assert "(" in s or "1/2*w" in s  # mixed coefficient gets parenthesized
    assert parse_expression(s, SP) == p


def random_poly(rng, sp):
    out = sp.zero()
    for _ in range(rng.randint(0, 5)):
        key = tuple(rng.randint(0, 3) for _ in range(sp.nz)) + (rng.randint(0, 2),)
        c = GaussianRational(
            Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
            Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
        )
        out = out + sp.monomial(key, c)
    return out


def test_parse_format_fixed_point():
    rng = random.Random(20260823)
    sp = VariableSpace(4)
    for _ in range(400):
        p = random_poly(rng, sp)
        s = format_poly(p)
        q = parse_expression(s, sp)
        assert q == p
        assert format_poly(q) == s


def test_parse_constant():
    assert parse_constant("3/2 - i") == GaussianRational(Fraction(3, 2), -1)
    assert parse_constant("2*i") == GaussianRational(0, 2)
    with pytest.raises(ExpressionError):
        parse_constant("z1")


def test_parse_point():
    pt = parse_point("(1, -i, 1/2 + i)", 3)
    assert pt == (
        GaussianRational(1),
        GaussianRational(0, -1),
        GaussianRational(Fraction(1, 2), 1),
    )
    assert parse_point("0, 2", 2) == (GaussianRational(0), GaussianRational(2))
    with pytest.raises(ExpressionError):
        parse_point("(1, 2)", 3)
