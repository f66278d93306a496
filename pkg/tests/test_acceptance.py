"""End-to-end acceptance checks.

Each test is one shipping criterion: exact certificate values on the
gallery maps, the 100-map normalization round trip, the randomized
lemma and kernel suites, and the symbolic coordinate identities.  Each
carries a ``criterion`` marker; conftest prints a one-line PASS/FAIL
summary per criterion at the end of the run.
"""

import random
import time
from fractions import Fraction

import pytest

from quadricmaps.automorphisms import (
    make_automorphism,
    random_indefinite_unitary,
)
from quadricmaps.corpus import CorpusSpec, gen_corpus
from quadricmaps.expressions import parse_expression
from quadricmaps.hermitian import HermPoly
from quadricmaps.lemmas import (
    isometry_decompose,
    pairing_divisibility_check,
    signed_squares_check,
)
from quadricmaps.linalg import Matrix
from quadricmaps.linearize import cm_kernel_solve_many, paired_block_sum
from quadricmaps.mapfiles import map_from_dict
from quadricmaps.maps import (
    degeneracy_check,
    multiplier,
    nontransversality_locus,
    segre_containment,
    span_dimension,
)
from quadricmaps.normalform import (
    check_coupling,
    normalize,
    reference_normal_form,
)
from quadricmaps.polynomials import VariableSpace
from quadricmaps.quadrics import Hyperquadric, cayley_identity_check
from quadricmaps.scalars import GaussianRational, I, ONE


@pytest.mark.criterion(1, "first gallery multiplier is exactly z1 + conj(z1)")
def test_criterion_1_multiplier_real_part(real_part):
    start = time.monotonic()
    cert = multiplier(real_part)
    elapsed = time.monotonic() - start
    sp = real_part.source.space
    expected = HermPoly.from_holo(sp.z(1)) + HermPoly.from_antiholo(sp.z(1))
    assert cert.verified
    assert cert.multiplier == expected
    assert cert.remainder.is_zero()
    assert elapsed < 1.0


@pytest.mark.criterion(2, "second gallery multiplier is c*|z2|^2, c = 16")
def test_criterion_2_multiplier_w_flat(w_flat):
    start = time.monotonic()
    cert = multiplier(w_flat)
    elapsed = time.monotonic() - start
    assert cert.verified
    sp = w_flat.source.space
    z2_sq = HermPoly.holo_times_antiholo(sp.z(2), sp.z(2))
    # the certified constant: the multiplier must be c*|z2|^2 exactly
    keys = list(cert.multiplier.terms)
    assert len(keys) == 1
    c = cert.multiplier.terms[keys[0]]
    assert cert.multiplier == z2_sq.scale(c)
    assert c.im == 0 and c.re > 0, "constant must be a positive rational"
    assert c == GaussianRational.of(16)
    # the value 4 is sometimes stated for this example; the exact
    # expansion certifies 16, and we surface that rather than hide it
    print(
        "criterion 2 note: certified constant c = 16 "
        "(a stated value of 4 does not match the exact expansion)"
    )
    loc = nontransversality_locus(w_flat, cert)
    assert loc.description == "z2 = 0"
    assert elapsed < 1.0


@pytest.mark.criterion(3, "loci z2 = 0 and Re(z1) = 0; flat map has g identically 0")
def test_criterion_3_loci(w_flat, real_part):
    assert nontransversality_locus(w_flat).description == "z2 = 0"
    assert nontransversality_locus(real_part).description == "Re(z1) = 0"
    # rigidity conclusion on the flat instance: w-component vanishes
    assert w_flat.w_component.is_zero()
    rep = degeneracy_check(w_flat)
    assert rep.applicable and rep.consistent is True


@pytest.mark.criterion(4, "span 5 (no hyperplane) and span 6 (inside w = 0)")
def test_criterion_4_spans(w_flat, real_part):
    assert span_dimension(real_part) == 5
    assert span_dimension(w_flat) == 6
    assert w_flat.w_component.is_zero()


@pytest.mark.criterion(5, "100-map normalization round trip on (5,2) -> (7,3)")
def test_criterion_5_normalization_round_trip():
    start = time.monotonic()
    spec = CorpusSpec(5, 2, 7, 3, psi_weight_bound=4, height_bound=2,
                      count=100, seed=20260823)
    entries = gen_corpus(spec)
    assert len(entries) == 100
    for entry in entries:
        f = map_from_dict(entry)
        cert = multiplier(f)
        assert cert.verified and cert.multiplier_at_zero > 0
        res = normalize(f, cert)
        sp = f.source.space
        # recovered map is exactly a paired form
        got = res.gen_form.components[4]
        assert res.gen_form.components[5] == got
        ref = reference_normal_form(5, 2, 3, 7, [got])
        assert res.normal_form.components == ref.components
        # ground truth recovered up to the residual stabilizer
        # (scalar c != 0 after dropping the pure-w monomial)
        want = parse_expression(entry["metadata"]["ground_truth"]["psi"][0], sp)
        w_key = (0,) * sp.nz + (1,)
        pred = want - sp.w().scale(want.coefficient(w_key))
        lead = sorted(pred.terms)[0]
        c = got.coefficient(lead) / pred.coefficient(lead)
        assert c and got == pred.scale(c)
        assert span_dimension(res.normal_form) == 6
        assert check_coupling(res.gen_form).holds
    assert time.monotonic() - start < 300.0


@pytest.mark.criterion(6, "100 automorphism multiplier identities, zero failures")
def test_criterion_6_automorphism_identities():
    rng = random.Random(6)
    for trial in range(100):
        big_n, ellp = (5, 2) if trial % 2 == 0 else (7, 3)
        quadric = Hyperquadric.standard(big_n, ellp)
        nz = quadric.space.nz
        lam = Fraction(rng.randint(1, 3), rng.randint(1, 3))
        eps = rng.choice([1, -1])
        a = [
            GaussianRational.of(Fraction(rng.randint(-2, 2), rng.randint(1, 2)))
            + GaussianRational.of(Fraction(rng.randint(-2, 2), rng.randint(1, 2))) * I
            for _ in range(nz)
        ]
        r = Fraction(rng.randint(-2, 2), rng.randint(1, 2))
        u = random_indefinite_unitary(quadric.signs, rng)
        if eps == -1:
            # balanced pattern: swapping the sign blocks reverses the form
            half = ellp
            perm = list(range(half, nz)) + list(range(half))
            swap = Matrix(
                [[1 if j == perm[i] else 0 for j in range(nz)] for i in range(nz)]
            )
            u = swap * u
        aut = make_automorphism(quadric, lam=lam, eps=eps, a=a, r=r, u=u)
        cert = aut.certificate
        assert cert.verified
        # rho' o tau * |Delta|^2 = eps lam^2 rho': the certified
        # quotient is the constant eps lam^2 with zero remainder
        assert aut.multiplier_constant == Fraction(eps) * lam**2
        expected = HermPoly.constant(quadric.space, Fraction(eps) * lam**2)
        assert cert.multiplier == expected
        assert cert.remainder.is_zero()


def _height_coefficients():
    one = GaussianRational.of(1)
    two = GaussianRational.of(2)
    return (one, -one, two, I)


@pytest.mark.criterion(7, "pairing lemma: exhaustive + 500 random, sharpness at k = n-1")
def test_criterion_7_pairing_suite():
    # exhaustive single-monomial instances, degree <= 2, small palette
    divisible_seen = 0
    for n in (3, 4):
        sp = VariableSpace(n)
        monos = [sp.z_monomials_of_degree(d) for d in (0, 1, 2)]
        keys = [k for group in monos for k in group]
        coeffs = _height_coefficients()
        for ell in range(n):
            for ka in keys:
                for kb in keys:
                    for ca in coeffs:
                        for cb in coeffs:
                            a = [sp.monomial(ka, ca)]
                            b = [sp.monomial(kb, cb)]
                            v = pairing_divisibility_check(a, b, ell)
                            assert v.hypotheses_met
                            assert v.consistent is not False
                            if v.division.divisible:
                                divisible_seen += 1
                                assert v.quotient_vanishes
    # single nonzero monomials never pair to a multiple of the form
    assert divisible_seen == 0

    # 500 randomized instances, k <= n-2; every tenth is built to
    # cancel so the divisible branch is exercised for real
    rng = random.Random(7)
    divisible_seen = 0
    for trial in range(500):
        n = rng.choice([3, 4, 5])
        sp = VariableSpace(n)
        ell = rng.randint(0, n - 1)
        k = rng.randint(1, n - 2)
        if trial % 10 == 0 and n >= 4:
            # cancelling pair: S = p conj(q) - p conj(q) = 0, divisible
            p, q = _random_zpoly(rng, sp), _random_zpoly(rng, sp)
            a = [p, p]
            b = [q, q.scale(-ONE)]
        else:
            a = [_random_zpoly(rng, sp) for _ in range(k)]
            b = [_random_zpoly(rng, sp) for _ in range(k)]
        v = pairing_divisibility_check(a, b, ell)
        assert v.consistent is not False, "a divisible instance with A != 0"
        if v.division.divisible and v.hypotheses_met:
            divisible_seen += 1
            assert v.quotient_vanishes
    assert divisible_seen > 0

    # sharpness: k = n - 1 with a = b = coordinates, ell = 0 gives A = 1
    for n in (3, 4):
        sp = VariableSpace(n)
        fam = [sp.z(j) for j in range(1, n)]
        v = pairing_divisibility_check(fam, fam, 0)
        assert not v.hypotheses_met
        assert v.division.divisible
        q = v.division.quotient
        assert q == type(q).constant(q.space, 1)
        assert not v.quotient_vanishes
        assert v.consistent is None


def _random_zpoly(rng, sp, degree=2):
    keys = [k for d in range(1, degree + 1) for k in sp.z_monomials_of_degree(d)]
    picks = rng.sample(keys, k=rng.randint(1, 2))
    out = sp.zero()
    for key in picks:
        c = GaussianRational.of(rng.randint(-2, 2)) + GaussianRational.of(rng.randint(-2, 2)) * I
        out = out + sp.monomial(key, c)
    return out


@pytest.mark.criterion(8, "200 isometry recoveries; boundary witness k = ell with A = 1")
def test_criterion_8_isometry_suite():
    rng = random.Random(8)
    for _ in range(200):
        n = rng.choice([4, 5, 6])
        sp = VariableSpace(n)
        k = rng.randint(1, min(3, n - 1))
        m = rng.randint(k, min(4, n - 1))
        # full-row-rank family: distinct coordinates plus noise
        a = []
        for i in range(k):
            p = sp.z(i + 1)
            if rng.random() < 0.5:
                p = p + _random_zpoly(rng, sp)
            a.append(p)
        u0_full = random_indefinite_unitary((1,) * m, rng)
        u0 = Matrix([[u0_full[i, j] for j in range(m)] for i in range(k)])
        b = [
            sum((a[i].scale(u0[i, j]) for i in range(k)), sp.zero())
            for j in range(m)
        ]
        rep = isometry_decompose(a, b)
        assert rep.identity_holds
        w = rep.isometry
        assert w.exact
        # b = a U and U conj(U)^t = Id, as exact identities
        for j in range(m):
            assert b[j] == sum((a[i].scale(w.matrix[i, j]) for i in range(k)), sp.zero())
        gram = w.matrix * w.matrix.conj_transpose()
        assert gram == Matrix.identity(k)

    # k = ell boundary: -|z1|^2 + |z2|^2 = 1 * Q on (3,1) is the
    # sharpness witness; hypotheses k < ell fail and A = 1 survives
    sp = VariableSpace(3)
    v = signed_squares_check([sp.z(1)], [sp.z(2)], 1)
    assert not v.hypotheses_met
    assert v.division.divisible
    q = v.division.quotient
    assert q is not None and not q.is_zero()
    assert q == type(q).constant(q.space, 1)
    assert v.consistent is None


@pytest.mark.criterion(9, "kernel triviality and datum rejection for the linearized operator")
def test_criterion_9_cm_kernel():
    start = time.monotonic()
    rng = random.Random(9)
    for n in (3, 4):
        for s in (5, 6):
            sp = VariableSpace(n)
            data = [None]
            for _ in range(10):
                data.append(_random_block_datum(rng, sp, n, s))
            reports = cm_kernel_solve_many(n, 1, s, data)
            zero_rep = reports[0]
            assert zero_rep.consistent and zero_rep.kernel_dimension == 0
            assert zero_rep.matches_expectation is True
            for rep in reports[1:]:
                assert not rep.consistent, "nonzero low-rank datum admitted a solution"
                assert rep.expectation is not None
                assert rep.matches_expectation is True
    assert time.monotonic() - start < 120.0


def _random_block_datum(rng, sp, n, s):
    """A nonzero datum of block rank <= n - 2: n - 2 pairs p*conj(q)
    with distinct degrees, so the conjugate halves land in distinct
    blocks."""
    dp = 3 if s == 5 else 4
    dq = s - dp
    while True:
        ps, qs = [], []
        for _ in range(n - 2):
            ps.append(_random_homog(rng, sp, dp))
            qs.append(_random_homog(rng, sp, dq))
        a = paired_block_sum(ps, qs)
        if not a.is_zero():
            return a


def _random_homog(rng, sp, degree):
    keys = sp.z_monomials_of_degree(degree)
    picks = rng.sample(keys, k=min(len(keys), rng.randint(1, 2)))
    out = sp.zero()
    for key in picks:
        c = GaussianRational.of(rng.randint(-2, 2)) + GaussianRational.of(rng.randint(-2, 2)) * I
        out = out + sp.monomial(key, c)
    return out


@pytest.mark.criterion(10, "bounded-model identity holds for all n <= 6, ell <= (n-1)/2")
def test_criterion_10_cayley():
    checked = 0
    for n in range(2, 7):
        for ell in range(0, (n - 1) // 2 + 1):
            assert cayley_identity_check(n, ell), (n, ell)
            checked += 1
    assert checked >= 8


@pytest.mark.criterion(11, "Segre containment holds for the flat map at 0, fails for the full-span map")
def test_criterion_11_segre(w_flat, real_part):
    rep = segre_containment(w_flat, (0, 0, 0, 0, 0))
    assert rep.holds
    # non-transversal base points of the full-span map: Re z1 = 0
    samples = [
        (I, GaussianRational.of(0), -I),
        (GaussianRational.of(0), ONE, I),
        (2 * I, ONE, ONE - 3 * I),
    ]
    cert = multiplier(real_part)
    for q in samples:
        assert cert.multiplier_at(q) == 0, "sample must be non-transversal"
        rep = segre_containment(real_part, q)
        assert not rep.holds
        assert not rep.residual.is_zero()
