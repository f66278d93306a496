"""Holomorphic polynomial algebra over Gaussian rationals."""

import random

import pytest

from quadricmaps.polynomials import HoloPoly, VariableSpace, divide_exact, weighted_truncation
from quadricmaps.scalars import GaussianRational, I


SP3 = VariableSpace(3)


def random_poly(rng, sp, max_terms=4, max_deg=2, max_w=1):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        key = tuple(rng.randint(0, max_deg) for _ in range(sp.nz)) + (
            rng.randint(0, max_w),
        )
        c = GaussianRational.of(rng.randint(-3, 3)) + GaussianRational.of(
            rng.randint(-3, 3)
        ) * I
        if c:
            terms[key] = c
    return HoloPoly(sp, terms)


def random_point(rng, sp):
    return tuple(
        GaussianRational.of(rng.randint(-2, 2))
        + GaussianRational.of(rng.randint(-2, 2)) * I
        for _ in range(sp.n)
    )


def test_space_basics():
    assert SP3.nz == 2
    assert SP3.z(1) != SP3.z(2)
    with pytest.raises(ValueError):
        SP3.z(3)
    assert SP3.w().weight() == 2
    assert SP3.weight_of_key((1, 0, 1)) == 3


def test_monomial_enumeration_counts():
    sp = VariableSpace(5)
    assert len(sp.z_monomials_of_degree(0)) == 1
    assert len(sp.z_monomials_of_degree(2)) == 10
    # weight s keys: |alpha| + 2m = s
    assert len(sp.monomials_of_weight(2)) == 10 + 1
    assert len(sp.monomials_of_weight(3)) == 20 + 4


def test_arithmetic_and_identities():
    z1, z2, w = SP3.z(1), SP3.z(2), SP3.w()
    p = (z1 + z2) * (z1 - z2)
    assert p == z1 * z1 - z2 * z2
    assert (z1 + 1) ** 2 == z1 * z1 + 2 * z1 + 1
    assert (w * z1).weight() == 3
    assert p.scale(0).is_zero()


def test_weighted_parts():
    z1, w = SP3.z(1), SP3.w()
    p = z1 + z1 * z1 + w + z1 * w
    assert p.weighted_part(1) == z1
    assert p.weighted_part(2) == z1 * z1 + w
    assert p.truncate_weight(2) == z1 + z1 * z1 + w
    assert p.lowest_weight() == 1
    parts = p.weighted_components()
    assert sum(parts.values(), SP3.zero()) == p


def test_w_coefficient():
    z1, w = SP3.z(1), SP3.w()
    p = z1 + 2 * z1 * w + w * w
    assert p.w_coefficient(0) == z1
    assert p.w_coefficient(1) == 2 * z1
    assert p.w_coefficient(2) == SP3.one()


def test_divide_exact():
    # germ division: the denominator must not vanish at 0
    z1, z2 = SP3.z(1), SP3.z(2)
    num = (1 + z1 + z2) * (z1 - 2 * z2)
    assert divide_exact(num, 1 + z1 + z2) == z1 - 2 * z2
    assert divide_exact(z1, 1 + z2) is None
    assert divide_exact(SP3.zero(), 1 + z1) == SP3.zero()
    with pytest.raises(ValueError):
        divide_exact(z1, z2)


def test_weighted_truncation_of_quotient():
    # jet of (num / den) at weight 2 where den(0) = 1
    z1, w = SP3.z(1), SP3.w()
    num = z1 + w
    den = SP3.one() + z1
    jet = weighted_truncation(num, den, 2)
    assert jet == z1 - z1 * z1 + w


def test_evaluate_product_identity():
    rng = random.Random(11)
    for _ in range(60):
        p = random_poly(rng, SP3)
        q = random_poly(rng, SP3)
        pt = random_point(rng, SP3)
        assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
        assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


def test_substitute_matches_evaluation():
    rng = random.Random(5)
    sp = SP3
    images = (sp.z(2), sp.z(1) * sp.z(2), sp.w() + sp.z(1))
    for _ in range(30):
        p = random_poly(rng, sp)
        pt = random_point(rng, sp)
        image_vals = tuple(im.evaluate(pt) for im in images)
        assert p.substitute(images).evaluate(pt) == p.evaluate(image_vals)


def test_conj_coefficients():
    z1 = SP3.z(1)
    p = z1.scale(GaussianRational(1, 2))
    assert p.conj_coefficients() == z1.scale(GaussianRational(1, -2))
