"""Sign patterns, the quadric surface, Segre varieties, and the model maps."""

import random
from fractions import Fraction

import pytest

from quadricmaps.maps import multiplier
from quadricmaps.polynomials import VariableSpace
from quadricmaps.quadrics import (
    GeneralizedDelta,
    Hyperquadric,
    ProjectivePoint,
    Signature,
    cayley_identity_check,
    cayley_signs,
    cayley_transform,
    flip_map,
    heisenberg_translation,
    hermitian_q,
    interchange_map,
    interchange_order,
)
from quadricmaps.scalars import GaussianRational, I


def gr(a, b=0):
    return GaussianRational(Fraction(a), Fraction(b))


def test_signature_signs():
    assert Signature(5, 2).signs() == (-1, -1, 1, 1)
    assert Signature(3, 0).signs() == (1, 1)
    with pytest.raises(ValueError):
        Signature(1, 0)
    with pytest.raises(ValueError):
        Signature(4, 4)


def test_generalized_delta():
    gd = GeneralizedDelta(5, 2, 3, 7)
    assert gd.tau == 1
    # negatives at j <= ell and at n <= j <= n + tau - 1
    assert gd.signs() == (-1, -1, 1, 1, -1, 1)
    assert gd.delta(5) == -1
    with pytest.raises(ValueError):
        gd.delta(0)
    with pytest.raises(ValueError):
        GeneralizedDelta(5, 2, 1, 7)
    with pytest.raises(ValueError):
        GeneralizedDelta(5, 2, 3, 5)  # second block does not fit


def test_hyperquadric_membership():
    q = Hyperquadric.standard(3, 1)
    # rho = Im w + |z1|^2 - |z2|^2
    assert q.rho_at((0, 0, 0)) == 0
    assert q.classify_point((0, 0, I)) == "inside"
    assert q.classify_point((0, 1, 0)) == "outside"
    assert q.classify_point((1, 1, 0)) == "on"
    with pytest.raises(ValueError):
        q.rho_at((0, 0))


def test_defining_poly_matches_rho():
    rng = random.Random(6)
    q = Hyperquadric.generalized(3, 1, 2, 6)
    for _ in range(20):
        pt = tuple(
            gr(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(q.n)
        )
        val = q.defining_poly().evaluate(pt)
        assert val.im == 0
        assert val.re == q.rho_at(pt)


def test_segre_reflexivity_and_symmetry():
    rng = random.Random(12)
    q = Hyperquadric.standard(4, 1)
    sp = q.space
    qform = hermitian_q(sp, q.signs)
    found = 0
    while found < 15:
        z = tuple(gr(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(sp.nz))
        u = gr(rng.randint(-2, 2))
        w = u + I * qform.evaluate(z + (gr(0),))
        p = z + (w,)
        assert q.classify_point(p) == "on"
        # a point of the quadric lies on its own Segre variety
        assert q.segre_variety(p).contains(p)
        # symmetry: p in S_q iff q in S_p
        z2 = tuple(gr(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(sp.nz))
        w2 = gr(rng.randint(-2, 2)) + I * qform.evaluate(z2 + (gr(0),))
        p2 = z2 + (w2,)
        assert q.segre_variety(p).contains(p2) == q.segre_variety(p2).contains(p)
        found += 1


def test_segre_off_quadric_point():
    q = Hyperquadric.standard(3, 1)
    inside = (gr(0), gr(0), I)
    assert not q.segre_variety(inside).contains(inside)


def test_projective_point():
    p = ProjectivePoint([1, I, 0])
    assert p == ProjectivePoint([2, gr(0, 2), 0])
    assert p != ProjectivePoint([1, 0, 0])
    assert hash(p) == hash(ProjectivePoint([I, gr(-1), 0]))
    with pytest.raises(ValueError):
        ProjectivePoint([0, 0, 0])


def test_interchange_order_identity_case():
    # tau = 0 embeddings read sources in order, then the appended slots
    assert interchange_order(5, 2, 2, 7) == (1, 2, 3, 4, 5, 6)
    # tau = 1 moves the new negative slot into position
    assert interchange_order(5, 2, 3, 7) == (1, 2, 4, 5, 3, 6)


def test_interchange_map_verifies():
    for args in ((5, 2, 3, 7), (3, 1, 2, 6), (4, 1, 1, 6)):
        m = interchange_map(*args)
        cert = multiplier(m)
        assert cert.verified
        assert cert.multiplier == type(cert.multiplier).constant(m.source.space, 1)


def test_flip_map_multiplier():
    for n, ell in ((3, 1), (5, 2), (4, 0)):
        m = flip_map(n, ell)
        assert m.source.num_negative == n - 1 - ell
        assert m.target.num_negative == ell
        cert = multiplier(m)
        assert cert.verified
        assert cert.multiplier == type(cert.multiplier).constant(m.source.space, -1)


def test_heisenberg_translation_preserves_rho():
    q = Hyperquadric.standard(3, 1)
    base = (gr(1), gr(1), gr(0))  # on the quadric: -1 + 1 = 0
    t = heisenberg_translation(q, base)
    cert = multiplier(t)
    assert cert.verified
    assert cert.multiplier == type(cert.multiplier).constant(q.space, 1)
    # origin goes to the base point
    zero = (gr(0),) * 3
    assert tuple(c.evaluate(zero) for c in t.components) == base
    with pytest.raises(ValueError):
        heisenberg_translation(q, (0, 0, I))  # not on the quadric


def test_cayley_components():
    comps = cayley_transform(3)
    assert len(comps) == 4
    sp = comps[0].space
    assert comps[0] == sp.const(I) + sp.w()
    assert comps[1] == sp.z(1).scale(2)
    assert comps[-1] == sp.const(I) - sp.w()


def test_cayley_identity_exhaustive():
    checked = 0
    for n in range(2, 7):
        for ell in range(0, n):
            assert cayley_identity_check(n, ell)
            assert len(cayley_signs(n, ell)) == n + 1
            checked += 1
    assert checked >= 8
