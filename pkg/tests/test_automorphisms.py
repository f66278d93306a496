"""Siegel-model automorphisms: construction, certificates, composition."""

import random
from fractions import Fraction

import pytest

from quadricmaps.automorphisms import (
    AutParams,
    compose,
    conjugate_by_permutation,
    make_automorphism,
    random_indefinite_unitary,
)
from quadricmaps.gallery import gallery_map
from quadricmaps.hermitian import HermPoly
from quadricmaps.linalg import Matrix
from quadricmaps.maps import RationalMap, multiplier
from quadricmaps.quadrics import Hyperquadric
from quadricmaps.scalars import GaussianRational, I


Q52 = Hyperquadric.standard(5, 2)


def random_aut(rng, quadric, eps=1):
    nz = quadric.space.nz
    lam = Fraction(rng.randint(1, 5), rng.randint(1, 5))
    a = tuple(
        GaussianRational(Fraction(rng.randint(-2, 2)), Fraction(rng.randint(-2, 2)))
        for _ in range(nz)
    )
    r = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    u = random_indefinite_unitary(quadric.signs, rng, steps=4)
    if eps == -1:
        ell = quadric.num_negative
        swap = Matrix(
            [
                [1 if (j + ell) % nz == k else 0 for k in range(nz)]
                for j in range(nz)
            ]
        )
        u = swap * u
    return make_automorphism(quadric, lam=lam, eps=eps, a=a, r=r, u=u)


def test_identity_automorphism():
    aut = make_automorphism(Q52)
    assert aut.multiplier_constant == 1
    assert aut.certificate.verified
    sp = Q52.space
    assert aut.map.denominator == sp.one()
    assert aut.map.numerators == tuple(sp.z(j) for j in range(1, 5)) + (sp.w(),)


def test_params_validation():
    nz = Q52.space.nz
    with pytest.raises(ValueError):
        AutParams(0, 1, (0,) * nz, 0, Matrix.identity(nz))
    with pytest.raises(ValueError):
        AutParams(1, 2, (0,) * nz, 0, Matrix.identity(nz))
    with pytest.raises(ValueError):
        make_automorphism(Q52, u=Matrix.identity(3))
    bad_u = Matrix.diagonal([2, 1, 1, 1])
    with pytest.raises(ValueError):
        make_automorphism(Q52, u=bad_u)


def test_certificates_random():
    rng = random.Random(2026)
    for _ in range(15):
        aut = random_aut(rng, Q52)
        c = aut.multiplier_constant
        assert c == aut.params.lam**2
        cert = aut.certificate
        assert cert.verified
        assert cert.multiplier == HermPoly.constant(Q52.space, c)
        assert cert.remainder.is_zero()
        assert cert.denominator_norm is not None
        assert aut.map.is_base_normalized


def test_eps_minus_one():
    rng = random.Random(5)
    for _ in range(5):
        aut = random_aut(rng, Q52, eps=-1)
        assert aut.multiplier_constant == -aut.params.lam**2
        assert aut.certificate.verified
        assert aut.certificate.multiplier == HermPoly.constant(
            Q52.space, aut.multiplier_constant
        )


def test_compose_automorphisms():
    rng = random.Random(8)
    a1 = random_aut(rng, Q52)
    a2 = random_aut(rng, Q52)
    comp = compose(a1, a2.map)
    assert isinstance(comp, RationalMap)
    cert = multiplier(comp)
    assert cert.verified
    assert cert.multiplier_at_zero == a1.multiplier_constant * a2.multiplier_constant


def test_compose_with_polynomial_map():
    rng = random.Random(13)
    m = gallery_map("linear")
    aut = random_aut(rng, m.target)
    comp = compose(aut, m)
    assert comp.source == m.source and comp.target == m.target
    cert = multiplier(comp)
    assert cert.verified
    assert cert.multiplier_at_zero == aut.multiplier_constant
    with pytest.raises(ValueError):
        compose(aut, gallery_map("w-flat"))  # wrong target


def test_composition_matches_pointwise():
    rng = random.Random(3)
    aut = random_aut(rng, Q52)
    m = gallery_map("linear")
    tgt_aut = random_aut(rng, m.target)
    comp = compose(tgt_aut, m)
    # evaluate at a few points where the denominator stays nonzero
    for pt in ((0, 0, 0), (Fraction(1, 3), 0, 0), (0, I, 0)):
        image = m.evaluate(pt)
        try:
            expected = tgt_aut.map.evaluate(image)
        except ZeroDivisionError:
            continue
        assert comp.evaluate(pt) == expected


def test_conjugate_by_permutation():
    rng = random.Random(21)
    aut = random_aut(rng, Q52)
    perm = [2, 1, 4, 3]  # swap within each sign block
    moved = conjugate_by_permutation(aut, perm, Q52)
    assert moved.certificate.verified
    assert moved.params.lam == aut.params.lam
    assert moved.params.a[0] == aut.params.a[1]
    with pytest.raises(ValueError):
        conjugate_by_permutation(aut, [1, 1, 2, 3], Q52)
    with pytest.raises(ValueError):
        conjugate_by_permutation(aut, [1, 3, 2, 4], Q52)  # mixes sign blocks


def test_random_indefinite_unitary_exact():
    for signs in ((1, 1), (-1, 1), (-1, -1, 1, 1), (-1, 1, 1, 1, 1)):
        e = Matrix.diagonal(list(signs))
        for seed in range(4):
            u = random_indefinite_unitary(signs, seed)
            assert u * e * u.conj_transpose() == e
    # determinism for a fixed seed
    assert random_indefinite_unitary((-1, 1, 1), 7) == random_indefinite_unitary(
        (-1, 1, 1), 7
    )
    with pytest.raises(ValueError):
        random_indefinite_unitary((0, 1), 1)
