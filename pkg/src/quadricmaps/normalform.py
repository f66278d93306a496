"""Normalization of transversal maps into a paired polynomial form.

For a verified map of standard signatures (n, ell) -> (N, ell') with
1 <= ell <= (n-1)/2 and 0 <= ell' - ell < ell, the pipeline works in
the generalized sign model of the target and composes four stabilizer
stages: an isometry fixing the weighted 1-jet, a translation killing
the w-coefficients, a real shift killing Re of the w^2-coefficient of
the last component, and a final unitary rotation pairing the extra
components.  Exact division by the accumulated denominator then either
exhibits the polynomial form

    (z_1, .., z_{n-1}, psi_1, .., psi_tau, psi_1, .., psi_tau, 0, .., 0, w)

or proves the map is not equivalent to one; every forced vanishing is
checked, never assumed, and failures raise NormalizationError with the
obstruction spelled out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .automorphisms import (
    Automorphism,
    compose,
    conjugate_by_permutation,
    make_automorphism,
)
from .hermitian import HermPoly
from .isometries import extend_rows_to_isometry, extend_rows_to_unitary
from .linalg import Matrix
from .maps import AnyMap, MultiplierCertificate, NotVerifiedError, QuadricMap, RationalMap, multiplier
from .polynomials import HoloPoly, divide_exact, weighted_truncation
from .quadrics import Hyperquadric, interchange_order
from .scalars import GaussianRational, ONE, TWO_I, ZERO


class NormalizationError(ValueError):
    """The map is outside the normalizable class, with the reason."""


def _fraction_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    a, b = x.numerator, x.denominator
    ra, rb = math.isqrt(a), math.isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


def as_polynomial(f: RationalMap) -> Optional[QuadricMap]:
    """The same map with the denominator divided out, if it divides
    every numerator exactly; None otherwise."""
    comps = []
    for num in f.numerators:
        q = divide_exact(num, f.denominator)
        if q is None:
            return None
        comps.append(q)
    return QuadricMap(f.source, f.target, comps)


def apply_factors(factors: Sequence[Automorphism], f: AnyMap) -> RationalMap:
    """Compose the factors after f, first factor innermost."""
    out: AnyMap = f
    for g in factors:
        out = compose(g, out)
    if isinstance(out, QuadricMap):
        out = RationalMap(
            out.source, out.target, out.components, out.source.space.one()
        )
    return out


def reference_normal_form(
    n: int, ell: int, ellp: int, big_n: int, psi: Sequence[HoloPoly]
) -> QuadricMap:
    """The paired polynomial form with the given extra components, as a
    map between standard quadrics.

    In generalized target coordinates the components are
    (z, psi_1..psi_tau, psi_1..psi_tau, 0..0, w); the standard-pattern
    map is the interchange permutation of that tuple.
    """
    tau = ellp - ell
    if tau < 0 or big_n < n + 2 * tau:
        raise ValueError("no room for the paired components in the target")
    if len(psi) != tau:
        raise ValueError(f"expected {tau} extra components, got {len(psi)}")
    source = Hyperquadric.standard(n, ell)
    sp = source.space
    for p in psi:
        if p.space != sp:
            raise ValueError("extra components must live in the source space")
        if not p.is_zero() and p.lowest_weight() < 2:
            raise ValueError("extra components must have weight at least 2")
    gen_comps = (
        [sp.z(j) for j in range(1, n)]
        + list(psi)
        + list(psi)
        + [sp.zero()] * (big_n - n - 2 * tau)
        + [sp.w()]
    )
    order = interchange_order(n, ell, ellp, big_n)
    std_comps: List[HoloPoly] = [sp.zero()] * big_n
    for j, oj in enumerate(order):
        std_comps[oj - 1] = gen_comps[j]
    std_comps[big_n - 1] = gen_comps[big_n - 1]
    return QuadricMap(source, Hyperquadric.standard(big_n, ellp), std_comps)


@dataclass(frozen=True, slots=True)
class NormalizedMap:
    """Outcome of a successful normalization.

    factors are target automorphisms in application order, so that
    factors[3] o .. o factors[0] o original = normal_form (an identity
    of rational maps; the composite's denominator divides out).
    gen_form and gen_factors state the same result in the generalized
    sign model of the target; when the input target already carries the
    generalized pattern the two views coincide.
    """

    original: AnyMap
    normal_form: QuadricMap
    gen_form: QuadricMap
    new_components: Tuple[HoloPoly, ...]
    factors: Tuple[Automorphism, ...]
    gen_factors: Tuple[Automorphism, ...]
    scale: Fraction
    multiplier_at_origin: Fraction


def _scope_check(f: AnyMap) -> Tuple[int, int, int, int, int, Tuple[int, ...]]:
    """Validate signatures; returns (n, ell, ellp, N, tau, order) where
    order is the interchange permutation (identity when the target is
    already the generalized model)."""
    n, ell = f.source.space.n, f.source.num_negative
    big_n = f.target.space.n
    ellp = f.target.num_negative
    if f.source != Hyperquadric.standard(n, ell):
        raise NormalizationError("source must carry the standard sign pattern")
    tau = ellp - ell
    if ell < 1 or 2 * ell > n - 1:
        raise NormalizationError(
            "source signature must satisfy 1 <= ell <= (n-1)/2"
        )
    if tau < 0:
        raise NormalizationError("target signature is smaller than the source's")
    if tau >= ell:
        raise NormalizationError(
            f"signature jump {tau} must be smaller than the source signature {ell}"
        )
    if big_n < n + 2 * tau:
        raise NormalizationError(
            f"target dimension {big_n} is too small for the paired form "
            f"(needs at least {n + 2 * tau})"
        )
    if f.target == Hyperquadric.generalized(n, ell, ellp, big_n):
        order = tuple(range(1, big_n))
    elif f.target == Hyperquadric.standard(big_n, ellp):
        order = interchange_order(n, ell, ellp, big_n)
    else:
        raise NormalizationError(
            "target must carry the standard or the generalized sign pattern"
        )
    return n, ell, ellp, big_n, tau, order


def _stages(
    f: AnyMap, cert: Optional[MultiplierCertificate]
) -> Tuple[RationalMap, Tuple[Automorphism, ...], Hyperquadric, Tuple[int, ...], Fraction, Fraction, int, int]:
    """Hypothesis checks plus stages 1-3; returns the stage-3 rational
    map in generalized coordinates together with the gen-model factors."""
    n, ell, ellp, big_n, tau, order = _scope_check(f)
    if not f.is_base_normalized:
        raise NormalizationError("map must fix the origin; recenter first")
    if cert is None:
        cert = multiplier(f)
    if not cert.verified:
        raise NotVerifiedError("cannot normalize: the multiplier identity fails")
    a0 = cert.multiplier_at_zero
    if a0 <= 0:
        raise NormalizationError(
            f"multiplier at the origin is {a0}; it must be positive"
        )
    root = _fraction_sqrt(a0)
    if root is None:
        raise NormalizationError(
            f"multiplier at the origin ({a0}) is not a perfect rational square, "
            "so no rational isometry can absorb it"
        )
    lam = 1 / root

    gen = Hyperquadric.generalized(n, ell, ellp, big_n)
    sp = f.source.space
    if isinstance(f, QuadricMap):
        nums = [f.components[j - 1] for j in order] + [f.w_component]
        den = sp.one()
    else:
        nums = [f.numerators[j - 1] for j in order] + [f.w_numerator]
        den = f.denominator
    d0 = den.constant_term()
    if d0 != ONE:
        nums = [nm * (ONE / d0) for nm in nums]
        den = den * (ONE / d0)
    fg = RationalMap(f.source, gen, nums, den)

    # stage 1: weighted 1-jet.  Row j of b holds the z_j-coefficients of
    # the numerators' weight-1 parts (the map's own, since den(0) = 1 and
    # the numerators vanish at 0).
    nz_s, nz_t = sp.nz, big_n - 1
    b_rows = []
    for j in range(1, n):
        key = tuple(1 if i == j - 1 else 0 for i in range(nz_s)) + (0,)
        b_rows.append(
            [fg.numerators[k].weighted_part(1).coefficient(key) for k in range(nz_t)]
        )
    b_mat = Matrix(b_rows)
    e_src = Matrix.diagonal(list(f.source.signs))
    e_gen = Matrix.diagonal(list(gen.signs))
    if b_mat * e_gen * b_mat.conj_transpose() != e_src.scale(a0):
        raise NormalizationError(
            "weight-1 rows do not satisfy the Gram relation forced by the "
            "multiplier identity"
        )
    scaled_rows = [[lam * c for c in row] for row in b_rows]
    c_mat = extend_rows_to_isometry(scaled_rows, tuple(range(n - 1)), gen.signs)
    g1 = make_automorphism(gen, lam=lam, u=c_mat.inverse())
    f1 = compose(g1, fg)

    # stage 2: w-coefficients of the weight-2 jets.
    w_key = (0,) * nz_s + (1,)
    a_vec = [
        weighted_truncation(nm, f1.denominator, 2).coefficient(w_key)
        for nm in f1.z_numerators
    ]
    g2 = make_automorphism(gen, a=a_vec)
    f2 = compose(g2, f1)

    # stage 3: Re of the w^2-coefficient of the last component.
    jet4 = weighted_truncation(f2.w_numerator, f2.denominator, 4)
    if jet4.weighted_part(2) != sp.w():
        raise NormalizationError(
            "last component does not reduce to w at weight 2"
        )
    if not jet4.weighted_part(3).is_zero():
        raise NormalizationError(
            "weight-3 part of the last component does not vanish; the map "
            "is not equivalent to the paired polynomial form"
        )
    r_val = jet4.coefficient((0,) * nz_s + (2,)).re
    g3 = make_automorphism(gen, r=r_val)
    f3 = compose(g3, f2)
    return f3, (g1, g2, g3), gen, order, lam, a0, n, tau


def pre_normal_form(
    f: AnyMap, cert: Optional[MultiplierCertificate] = None
) -> RationalMap:
    """The map after the three jet-fixing stages, in generalized target
    coordinates, before exact division and the pairing rotation."""
    return _stages(f, cert)[0]


def normalize(
    f: AnyMap, cert: Optional[MultiplierCertificate] = None
) -> NormalizedMap:
    """Normalize a verified map into the paired polynomial form, or
    raise NormalizationError naming the obstruction."""
    f3, (g1, g2, g3), gen, order, lam, a0, n, tau = _stages(f, cert)
    sp = f3.source.space
    big_n = gen.space.n

    poly = as_polynomial(f3)
    if poly is None:
        raise NormalizationError(
            "the stage denominator does not divide every numerator; the map "
            "is not equivalent to a polynomial form"
        )
    for k in range(n - 1):
        if poly.components[k] != sp.z(k + 1):
            raise NormalizationError(
                f"component {k + 1} does not reduce to z_{k + 1}"
            )
    if poly.w_component != sp.w():
        raise NormalizationError("last component does not reduce to w")
    new_comps = list(poly.components[n - 1 : big_n - 1])
    for i, c in enumerate(new_comps):
        if not c.is_zero() and c.lowest_weight() < 2:
            raise NormalizationError(
                f"extra component {n + i} keeps terms of weight below 2"
            )

    # stage 4: rotate the positive extra components onto (psi, 0).
    phi_neg = new_comps[:tau]
    phi_pos = new_comps[tau:]
    m = len(phi_pos)
    if tau == 0:
        for c in phi_pos:
            if not c.is_zero():
                raise NormalizationError(
                    "extra components must vanish when the signatures agree"
                )
        g4 = make_automorphism(gen)
    elif all(c.is_zero() for c in phi_neg + phi_pos):
        # psi identically zero: already in paired shape
        g4 = make_automorphism(gen)
    else:
        keys = sorted({k for c in phi_neg + phi_pos for k in c.terms})
        a_mat = Matrix([[c.coefficient(k) for k in keys] for c in phi_neg])
        if a_mat.rank() < tau:
            raise NormalizationError(
                "negative extra components are linearly dependent; the "
                "pairing rotation is not determined"
            )
        a_t = a_mat.transpose()
        u_rows = []
        for c in phi_pos:
            sol = a_t.solve([c.coefficient(k) for k in keys])
            if sol is None:
                raise NormalizationError(
                    "positive extra components are not combinations of the "
                    "negative ones"
                )
            u_rows.append(list(sol))
        u_phi = Matrix(u_rows)  # phi_pos = u_phi . phi_neg
        if u_phi.conj_transpose() * u_phi != Matrix.identity(tau):
            raise NormalizationError(
                "pairing coefficients are not isometric; the extra "
                "components cannot be rotated into matched pairs"
            )
        w_mat = extend_rows_to_unitary(
            [list(u_phi.col(j)) for j in range(tau)], m
        )
        m_mat = w_mat.conj()
        rot = [
            [ONE if i == j else ZERO for j in range(n - 1 + tau)]
            + [ZERO] * m
            for i in range(n - 1 + tau)
        ]
        m_t = m_mat.transpose()
        for i in range(m):
            rot.append(
                [ZERO] * (n - 1 + tau) + [m_t[i, j] for j in range(m)]
            )
        g4 = make_automorphism(gen, u=Matrix(rot))
    f4 = compose(g4, poly)
    if f4.denominator != sp.one():
        raise AssertionError("pairing rotation must not introduce a denominator")
    final = QuadricMap(f3.source, gen, f4.numerators)

    psi = tuple(final.components[n - 1 : n - 1 + tau])
    for i in range(tau):
        if final.components[n - 1 + tau + i] != psi[i]:
            raise NormalizationError(
                "rotated extra components do not pair up exactly"
            )
    for c in final.components[n - 1 + 2 * tau : big_n - 1]:
        if not c.is_zero():
            raise NormalizationError(
                "unpaired extra components do not vanish after the rotation"
            )

    final_cert = multiplier(final)
    if not final_cert.verified or final_cert.multiplier != HermPoly.constant(
        sp, 1
    ):
        raise AssertionError("normal form must have unit multiplier")

    gen_factors = (g1, g2, g3, g4)
    if order == tuple(range(1, big_n)):
        normal_std = final
        factors = gen_factors
    else:
        std_target = Hyperquadric.standard(big_n, f.target.num_negative)
        std_comps: List[HoloPoly] = [sp.zero()] * big_n
        for j, oj in enumerate(order):
            std_comps[oj - 1] = final.components[j]
        std_comps[big_n - 1] = final.w_component
        normal_std = QuadricMap(f3.source, std_target, std_comps)
        factors = tuple(
            conjugate_by_permutation(g, order, std_target)
            for g in gen_factors
        )
    return NormalizedMap(
        original=f,
        normal_form=normal_std,
        gen_form=final,
        new_components=psi,
        factors=factors,
        gen_factors=gen_factors,
        scale=lam,
        multiplier_at_origin=a0,
    )


@dataclass(frozen=True, slots=True)
class CouplingReport:
    """Both sides of the jet coupling identity for a pre-normalized map.

    For a verified map whose components start (z + O(2), phi, w + O(3))
    with no quadratic z-terms in the z-block, the signed square sum of
    the quadratic parts of the extra components is pinned down by the
    linear w-coefficients a^(1) and the w-coefficient gamma of the
    multiplier's weight-2 part:

        sum_s delta'_s |phi_s^(2)|^2
            = -2i <a^(1)(z), conj z>_ell Q + 2i gamma Q^2.
    """

    w_coeff_linear: Tuple[HoloPoly, ...]
    new_quadratic: Tuple[HoloPoly, ...]
    lhs: HermPoly
    rhs: HermPoly
    holds: bool


def _herm_jet(num: HermPoly, den: HermPoly, order: int) -> HermPoly:
    c0 = den.terms.get((0,) * 2 * den.space.n, ZERO)
    if not c0:
        raise ValueError("denominator vanishes at the origin")
    parts: List[HermPoly] = []
    for s in range(order + 1):
        acc = num.weighted_part(s)
        for t, p in enumerate(parts):
            acc = acc - p * den.weighted_part(s - t)
        parts.append(acc.scale(ONE / c0))
    out = HermPoly(num.space, {})
    for p in parts:
        out = out + p
    return out


def check_coupling(
    f: AnyMap, cert: Optional[MultiplierCertificate] = None
) -> CouplingReport:
    """Evaluate the coupling identity between the linear w-coefficients
    of the z-block and the quadratic parts of the extra components.

    Requires a verified map with unit multiplier at the origin whose
    z-block components are z_j + O(weight 2) with no quadratic z-terms,
    and whose extra components have weight at least 2.
    """
    if cert is None:
        cert = multiplier(f)
    if not cert.verified:
        raise NotVerifiedError("cannot check coupling: the map is unverified")
    src = f.source
    n = src.space.n
    big_n = f.target.space.n
    sp = src.space
    if f.target.signs[: n - 1] != src.signs:
        raise ValueError(
            "target signs must extend the source signs slot by slot"
        )
    if cert.multiplier_at_zero != 1:
        raise ValueError(
            "pre-normal form requires unit multiplier at the origin"
        )
    if isinstance(f, QuadricMap):
        nums, den = f.components, sp.one()
    else:
        nums, den = f.numerators, f.denominator
    jets = [weighted_truncation(nm, den, 3) for nm in nums]

    w_key = (0,) * sp.nz + (1,)
    a_lin: List[HoloPoly] = []
    for k in range(n - 1):
        jet = jets[k]
        if jet.weighted_part(1) != sp.z(k + 1):
            raise ValueError(f"component {k + 1} does not start with z_{k + 1}")
        quad = jet.weighted_part(2)
        if not (quad - sp.w() * quad.coefficient(w_key)).is_zero():
            raise ValueError(
                f"component {k + 1} keeps quadratic z-terms; pre-normalize first"
            )
        a_lin.append(jet.weighted_part(3).w_coefficient(1))
    phi_quad: List[HoloPoly] = []
    for k in range(n - 1, big_n - 1):
        jet = jets[k]
        if not jet.truncate_weight(1).is_zero():
            raise ValueError(
                f"extra component {k + 1} has terms of weight below 2"
            )
        phi_quad.append(jet.weighted_part(2).w_coefficient(0))

    lhs = HermPoly(sp, {})
    for s, phi in zip(f.target.signs[n - 1 :], phi_quad):
        term = HermPoly.holo_times_antiholo(phi, phi)
        lhs = lhs + (term if s > 0 else -term)

    if cert.denominator_norm is None:
        a_jet2 = cert.multiplier.truncate_weight(2)
    else:
        a_jet2 = _herm_jet(cert.multiplier, cert.denominator_norm, 2)
    gamma = a_jet2.terms.get(w_key + (0,) * sp.n, ZERO)

    pair = HermPoly(sp, {})
    for sign, aj, j in zip(src.signs, a_lin, range(1, n)):
        term = HermPoly.holo_times_antiholo(aj, sp.z(j))
        pair = pair + (term if sign > 0 else -term)
    q = src.q_form()
    rhs = (pair * q).scale(-TWO_I) + (q * q).scale(TWO_I * gamma)
    return CouplingReport(
        w_coeff_linear=tuple(a_lin),
        new_quadratic=tuple(phi_quad),
        lhs=lhs,
        rhs=rhs,
        holds=lhs == rhs,
    )
