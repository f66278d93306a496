"""Verification, transversality, span, Segre containment, and degeneracy."""

from fractions import Fraction

import pytest

from quadricmaps.expressions import parse_expression
from quadricmaps.gallery import gallery_map
from quadricmaps.maps import (
    NotVerifiedError,
    QuadricMap,
    RationalMap,
    compose_quadric_maps,
    degeneracy_check,
    multiplier,
    nontransversality_locus,
    recenter,
    segre_containment,
    siegel_side_samples,
    signature_necessary_conditions,
    span_dimension,
    transversality,
)
from quadricmaps.quadrics import Hyperquadric, flip_map, heisenberg_translation
from quadricmaps.scalars import GaussianRational, I


def gr(a, b=0):
    return GaussianRational(Fraction(a), Fraction(b))


def square_class_map():
    """(5,2) -> (7,3) with constant multiplier 2: each component scaled
    by 1+i, zeros in the fresh slots, w doubled."""
    src = Hyperquadric.standard(5, 2)
    tgt = Hyperquadric.standard(7, 3)
    sp = src.space
    texts = ["(1+i)*z1", "(1+i)*z2", "0", "(1+i)*z3", "(1+i)*z4", "0", "2*w"]
    comps = [parse_expression(t, sp) for t in texts]
    return QuadricMap(src, tgt, comps)


def test_constructor_validation():
    src = Hyperquadric.standard(3, 1)
    tgt = Hyperquadric.standard(5, 2)
    sp = src.space
    with pytest.raises(ValueError):
        QuadricMap(src, tgt, [sp.z(1), sp.w()])  # wrong count
    other = Hyperquadric.standard(4, 1).space
    with pytest.raises(ValueError):
        QuadricMap(src, tgt, [other.z(1)] * 5)
    with pytest.raises(ValueError):
        RationalMap(src, tgt, [sp.z(1)] * 5, sp.z(1))  # denominator dies at 0


def test_refutation_witness():
    m = gallery_map("w-flat")
    # corrupt one component; the identity must now fail with a concrete
    # witness on the source quadric
    comps = list(m.components)
    comps[0] = comps[0] + m.source.space.z(1)
    bad = QuadricMap(m.source, m.target, comps)
    cert = multiplier(bad)
    assert not cert.verified
    assert cert.witness is not None
    assert m.source.classify_point(cert.witness) == "on"
    image = bad.evaluate(cert.witness)
    assert bad.target.rho_at(image) == cert.witness_value
    assert cert.witness_value != 0
    with pytest.raises(NotVerifiedError):
        cert.multiplier_at(cert.witness)


def test_transversality_points():
    m = gallery_map("real-part")
    cert = multiplier(m)
    rep = transversality(m, (1, 0, -I), cert)
    assert rep.multiplier_value == 2
    assert rep.transversal and rep.side_preserving
    rep0 = transversality(m, (I, 0, -I), cert)
    assert rep0.multiplier_value == 0
    assert not rep0.transversal and not rep0.side_preserving
    with pytest.raises(ValueError):
        transversality(m, (0, 0, I), cert)  # not on the quadric


def test_multiplier_at_zero():
    assert multiplier(gallery_map("linear")).multiplier_at_zero == 1
    assert multiplier(gallery_map("w-flat")).multiplier_at_zero == 0
    assert multiplier(square_class_map()).multiplier_at_zero == 2


def test_locus_descriptions():
    assert nontransversality_locus(gallery_map("w-flat")).description == "z2 = 0"
    assert nontransversality_locus(gallery_map("real-part")).description == "Re(z1) = 0"
    assert (
        nontransversality_locus(gallery_map("linear")).description
        == "empty (multiplier is a nonzero constant)"
    )
    assert not nontransversality_locus(gallery_map("w-flat")).vanishes_identically


def test_recenter():
    m = gallery_map("real-part")
    rc = recenter(m, (1, 0, -I))
    assert rc.point == (gr(1), gr(0), -I)
    assert rc.image_point == m.evaluate((1, 0, -I))
    assert rc.map.is_base_normalized
    assert rc.certificate.verified
    assert rc.scale == 2 and rc.unit_multiplier == 1
    # the recentered map is transversal at the origin with value A(p)
    assert rc.certificate.multiplier_at_zero == 2
    with pytest.raises(ValueError):
        recenter(m, (0, 0, I))


def test_recenter_at_degenerate_point():
    m = gallery_map("w-flat")
    rc = recenter(m, (0, 0, 0, 0, 0))
    assert rc.scale == 1 and rc.unit_multiplier == 0


def test_span_dimension():
    assert span_dimension(gallery_map("w-flat")) == 6
    assert span_dimension(gallery_map("real-part")) == 5
    assert span_dimension(gallery_map("linear")) == 3
    assert span_dimension(square_class_map()) == 5


def test_span_invariant_under_translations():
    m = gallery_map("w-flat")
    src_t = heisenberg_translation(m.source, (1, 0, 1, 0, 0))
    moved = compose_quadric_maps(m, src_t)
    assert span_dimension(moved) == span_dimension(m)
    tgt_t = heisenberg_translation(m.target, (0,) * 7)
    moved2 = compose_quadric_maps(tgt_t, m)
    assert span_dimension(moved2) == span_dimension(m)


def test_signature_conditions():
    pos = signature_necessary_conditions(gallery_map("linear"))
    assert pos.applicable and pos.sign == 1 and pos.all_hold
    neg = signature_necessary_conditions(flip_map(4, 1))
    assert neg.applicable and neg.sign == -1 and neg.all_hold
    degenerate = signature_necessary_conditions(gallery_map("w-flat"))
    assert not degenerate.applicable
    assert "transversal" in degenerate.reason


def test_segre_containment_both_ways():
    rep = segre_containment(gallery_map("w-flat"), (0, 0, 0, 0, 0))
    assert rep.holds and rep.residual.is_zero()
    m = gallery_map("linear")
    rep2 = segre_containment(m, (0, 0, 0))
    assert not rep2.holds
    assert rep2.residual == m.source.space.w()
    with pytest.raises(ValueError):
        segre_containment(m, (0, 0))


def test_siegel_side_samples():
    samples = siegel_side_samples(square_class_map())
    assert len(samples) == 4
    for pt, val in samples:
        assert val == 2 * pt[-1].im
    for _, val in siegel_side_samples(gallery_map("w-flat")):
        assert val == 0


def test_degeneracy_check():
    rep = degeneracy_check(gallery_map("w-flat"))
    assert rep.applicable and rep.consistent is True
    assert rep.w_component_vanishes

    # real-part: non-transversal at 0 but the signature bound fails
    rep2 = degeneracy_check(gallery_map("real-part"))
    assert not rep2.applicable
    assert any("signature too large" in r for r in rep2.reasons)
    assert rep2.consistent is None

    # linear embedding: transversal at the origin
    rep3 = degeneracy_check(gallery_map("linear"))
    assert not rep3.applicable
    assert any("transversal" in r for r in rep3.reasons)


def test_compose_validation():
    m = gallery_map("linear")
    with pytest.raises(ValueError):
        compose_quadric_maps(m, m)  # target of inner is not source of outer


def test_square_class_map_certificate():
    m = square_class_map()
    cert = multiplier(m)
    assert cert.verified
    assert cert.multiplier == type(cert.multiplier).constant(m.source.space, 2)
    assert cert.remainder.is_zero()
