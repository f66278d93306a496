"""Holomorphic maps between hyperquadrics and their certificates.

The fundamental object is the identity

    rho_target(F(z, w), conj F(z, w)) = A(z, zbar, w, wbar) * rho_source

for a polynomial map F, or, for a rational map F = (numerators)/D,

    rho_target(F) * |D|^2 = A * rho_source.

Because rho_source = (i/2) wbar + (terms without wbar) has a unit
leading coefficient as a polynomial in wbar, division with remainder by
rho_source is exact and unique, with a wbar-free remainder.  The map
sends its source quadric into the target exactly when that remainder
vanishes: a wbar-free polynomial vanishing on the quadric is zero, since
restricting to the chart w = u + i Q is injective on wbar-free
polynomials.  So the certificate produced here is sound in both
directions, and a failed verification comes with an exact rational point
on the source quadric whose image leaves the target quadric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .hermitian import ChartPoly, HermPoly
from .linalg import rank_of_dict_rows
from .polynomials import HoloPoly
from .quadrics import Hyperquadric, Point, as_point, chart_q, heisenberg_translation
from .scalars import GaussianRational, ONE, TWO_I, ZERO, ScalarLike


class NotVerifiedError(ValueError):
    """Raised when an operation needs a verified multiplier identity."""


@dataclass(frozen=True, slots=True, eq=False)
class QuadricMap:
    """Polynomial map given by components in the source coordinates; the
    last component is the w-part."""

    source: Hyperquadric
    target: Hyperquadric
    components: Tuple[HoloPoly, ...]

    def __init__(
        self,
        source: Hyperquadric,
        target: Hyperquadric,
        components: Sequence[HoloPoly],
    ) -> None:
        comps = tuple(components)
        if len(comps) != target.n:
            raise ValueError(
                f"expected {target.n} components, got {len(comps)}"
            )
        if any(c.space != source.space for c in comps):
            raise ValueError("components must live in the source coordinates")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "components", comps)

    @property
    def z_components(self) -> Tuple[HoloPoly, ...]:
        return self.components[:-1]

    @property
    def w_component(self) -> HoloPoly:
        return self.components[-1]

    @property
    def is_base_normalized(self) -> bool:
        return all(not c.constant_term() for c in self.components)

    def evaluate(self, point: Sequence[ScalarLike]) -> Point:
        p = as_point(point)
        return tuple(c.evaluate(p) for c in self.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuadricMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.components))

    def __str__(self) -> str:
        body = ", ".join(str(c) for c in self.components)
        return f"({body}): {self.source} -> {self.target}"


@dataclass(frozen=True, slots=True, eq=False)
class RationalMap:
    """Rational map (numerators / denominator); the denominator must not
    vanish at the origin."""

    source: Hyperquadric
    target: Hyperquadric
    numerators: Tuple[HoloPoly, ...]
    denominator: HoloPoly

    def __init__(
        self,
        source: Hyperquadric,
        target: Hyperquadric,
        numerators: Sequence[HoloPoly],
        denominator: HoloPoly,
    ) -> None:
        nums = tuple(numerators)
        if len(nums) != target.n:
            raise ValueError(f"expected {target.n} numerators, got {len(nums)}")
        if any(c.space != source.space for c in nums) or denominator.space != source.space:
            raise ValueError("numerators and denominator must live in the source coordinates")
        if not denominator.constant_term():
            raise ValueError("denominator vanishes at the origin")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "numerators", nums)
        object.__setattr__(self, "denominator", denominator)

    @property
    def z_numerators(self) -> Tuple[HoloPoly, ...]:
        return self.numerators[:-1]

    @property
    def w_numerator(self) -> HoloPoly:
        return self.numerators[-1]

    @property
    def is_base_normalized(self) -> bool:
        return all(not c.constant_term() for c in self.numerators)

    def evaluate(self, point: Sequence[ScalarLike]) -> Point:
        p = as_point(point)
        d = self.denominator.evaluate(p)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the point")
        return tuple(c.evaluate(p) / d for c in self.numerators)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.numerators == other.numerators
            and self.denominator == other.denominator
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.numerators, self.denominator))

    def __str__(self) -> str:
        body = ", ".join(str(c) for c in self.numerators)
        return f"({body}) / ({self.denominator}): {self.source} -> {self.target}"


AnyMap = Union[QuadricMap, RationalMap]


@dataclass(frozen=True, slots=True)
class MultiplierCertificate:
    """Outcome of dividing rho_target(F) (times |D|^2 for rational maps)
    by rho_source.

    verified means the remainder vanishes, so the identity holds exactly
    and `multiplier` is the unique quotient A.  Otherwise `witness` is a
    point on the source quadric with denominator nonzero whose image has
    rho_target = witness_value != 0.
    """

    verified: bool
    multiplier: HermPoly
    remainder: HermPoly
    denominator_norm: Optional[HermPoly] = None
    witness: Optional[Point] = None
    witness_value: Optional[Fraction] = None

    def multiplier_at(self, point: Sequence[ScalarLike]) -> Fraction:
        """Effective multiplier value A(p) (or A(p)/|D(p)|^2)."""
        if not self.verified:
            raise NotVerifiedError("map does not satisfy the multiplier identity")
        p = as_point(point)
        val = self.multiplier.evaluate(p)
        if self.denominator_norm is not None:
            d2 = self.denominator_norm.evaluate(p).real_or_raise()
            if not d2:
                raise ZeroDivisionError("denominator vanishes at the point")
            return val.real_or_raise() / d2
        return val.real_or_raise()

    @property
    def multiplier_at_zero(self) -> Fraction:
        space = self.multiplier.space
        zero = (ZERO,) * space.n
        return self.multiplier_at(zero)


def _divide_by_rho(p: HermPoly, rho: HermPoly) -> Tuple[HermPoly, HermPoly]:
    """Quotient and wbar-free remainder of p by rho; rho has leading
    wbar coefficient i/2, so each elimination step multiplies by -2i."""
    space = p.space
    quotient = HermPoly(space, {})
    rem = p
    minus_two_i = -TWO_I
    while True:
        d = rem.wbar_degree()
        if d < 1:
            break
        lead = rem.wbar_blocks()[d].shift_wbar(-d)
        qterm = lead.scale(minus_two_i).shift_wbar(d - 1)
        quotient = quotient + qterm
        rem = rem - qterm * rho
    return quotient, rem


def _pullback_polynomial(f: QuadricMap) -> HermPoly:
    rho_t = f.target.defining_poly()
    return rho_t.substitute_holo(f.z_components, f.w_component)


def _pullback_rational(f: RationalMap) -> Tuple[HermPoly, HermPoly]:
    """rho_target(F) |D|^2 as a polynomial, together with |D|^2."""
    d = f.denominator
    g = f.w_numerator
    # Im(g/D) |D|^2 = (g conj(D) - conj(g) D) / 2i
    imag = (
        HermPoly.holo_times_antiholo(g, d) - HermPoly.holo_times_antiholo(d, g)
    ).scale(-GaussianRational(0, Fraction(1, 2)))
    total = imag
    for s, comp in zip(f.target.signs, f.z_numerators):
        term = HermPoly.holo_times_antiholo(comp, comp)
        total = total - term.scale(s)
    den_norm = HermPoly.holo_times_antiholo(d, d)
    return total, den_norm


def _max_exponent(poly: ChartPoly) -> int:
    m = 1
    for k in poly.terms:
        m = max(m, max(k))
    return m


def _substitute_chart_z(poly: ChartPoly, j: int, value: GaussianRational) -> ChartPoly:
    """Fix z_j = value (and conj z_j = conj value) in a chart polynomial."""
    nz = poly.space.nz
    vb = value.conj()
    out = {}
    for k, c in poly.terms.items():
        a, b = k[j - 1], k[nz + j - 1]
        coeff = c
        if a:
            coeff = coeff * value**a
        if b:
            coeff = coeff * vb**b
        if not coeff:
            continue
        nk = list(k)
        nk[j - 1] = 0
        nk[nz + j - 1] = 0
        nk = tuple(nk)
        prev = out.get(nk)
        s = coeff if prev is None else prev + coeff
        if s:
            out[nk] = s
        else:
            out.pop(nk, None)
    return ChartPoly(poly.space, out)


def _nonzero_chart_point(poly: ChartPoly) -> Tuple[Tuple[GaussianRational, ...], Fraction]:
    """An exact (z, u) with poly(z, u) != 0, found variable by variable.

    A nonzero polynomial of degree at most d in each of two rational
    variables cannot vanish on a (2d+1) x (2d+1) grid, so fixing one
    complex variable at a time from such a grid keeps the rest nonzero.
    """
    if poly.is_zero():
        raise ValueError("polynomial is identically zero")
    nz = poly.space.nz
    d = _max_exponent(poly)
    grid = [Fraction(0)]
    for k in range(1, 2 * d + 1):
        grid.extend([Fraction(k), Fraction(-k)])
    current = poly
    zvals: List[GaussianRational] = []
    for j in range(1, nz + 1):
        chosen = None
        for re in grid:
            for im in grid:
                cand = GaussianRational(re, im)
                sub = _substitute_chart_z(current, j, cand)
                if not sub.is_zero():
                    chosen = cand
                    current = sub
                    break
            if chosen is not None:
                break
        if chosen is None:
            raise RuntimeError("grid search failed; grid bound violated")
        zvals.append(chosen)
    for u in grid:
        if current.evaluate([ZERO] * nz, u):
            return tuple(zvals), u
    raise RuntimeError("grid search failed on the chart variable")


def _chart_to_ambient(
    quadric: Hyperquadric, zvals: Sequence[GaussianRational], u: Fraction
) -> Point:
    q = quadric.signed_inner_at(zvals, zvals).real_or_raise()
    w = GaussianRational(0, q) + GaussianRational(u)
    return tuple(zvals) + (w,)


def multiplier(f: AnyMap) -> MultiplierCertificate:
    """Divide the pulled-back target form by rho_source and certify the
    outcome either way."""
    rho_s = f.source.defining_poly()
    if isinstance(f, QuadricMap):
        pullback = _pullback_polynomial(f)
        den_norm = None
    else:
        pullback, den_norm = _pullback_rational(f)
    quotient, rem = _divide_by_rho(pullback, rho_s)
    if quotient * rho_s + rem != pullback:
        raise AssertionError("division invariant violated")
    if rem.is_zero():
        return MultiplierCertificate(
            verified=True,
            multiplier=quotient,
            remainder=rem,
            denominator_norm=den_norm,
        )
    qc = chart_q(f.source.space, f.source.signs)
    search = rem.chart_restrict(qc)
    if den_norm is not None:
        search = search * den_norm.chart_restrict(qc)
    zvals, u = _nonzero_chart_point(search)
    witness = _chart_to_ambient(f.source, zvals, u)
    image = f.evaluate(witness)
    value = f.target.rho_at(image)
    if value == 0:
        raise AssertionError("witness does not separate; search is broken")
    return MultiplierCertificate(
        verified=False,
        multiplier=quotient,
        remainder=rem,
        denominator_norm=den_norm,
        witness=witness,
        witness_value=value,
    )


@dataclass(frozen=True, slots=True)
class TransversalityReport:
    point: Point
    multiplier_value: Fraction
    transversal: bool
    side_preserving: bool


def transversality(
    f: AnyMap, point: Sequence[ScalarLike], cert: Optional[MultiplierCertificate] = None
) -> TransversalityReport:
    """CR transversality at a point of the source quadric: the map is
    transversal there exactly when the multiplier value is nonzero, and
    locally sends the Siegel side to the Siegel side when positive."""
    p = as_point(point)
    if f.source.classify_point(p) != "on":
        raise ValueError("transversality is only defined on the source quadric")
    if cert is None:
        cert = multiplier(f)
    if not cert.verified:
        raise NotVerifiedError("map does not satisfy the multiplier identity")
    val = cert.multiplier_at(p)
    return TransversalityReport(
        point=p,
        multiplier_value=val,
        transversal=val != 0,
        side_preserving=val > 0,
    )


@dataclass(frozen=True, slots=True)
class LocusReport:
    """The set of quadric points where the (effective) multiplier
    vanishes; `description` is a readable form when the multiplier has a
    recognizable shape, otherwise a generic phrase."""

    multiplier: HermPoly
    vanishes_identically: bool
    description: str


def _describe_multiplier_zero_set(a: HermPoly) -> Tuple[bool, str]:
    if a.is_zero():
        return True, "entire quadric (multiplier is identically zero)"
    n = a.space.n
    nz = a.space.nz
    terms = a.terms
    if list(terms.keys()) == [(0,) * (2 * n)]:
        return False, "empty (multiplier is a nonzero constant)"
    if len(terms) == 1:
        (key, _), = terms.items()
        holo, anti = key[:n], key[n:]
        if holo == anti and not holo[-1]:
            live = [j for j in range(nz) if holo[j]]
            if len(live) == 1:
                return False, f"z{live[0] + 1} = 0"
    if len(terms) == 2:
        k1, k2 = sorted(terms)
        if k2 == k1[n:] + k1[:n] and terms[k2] == terms[k1].conj():
            key = k1 if k1[n:] == (0,) * n else k2
            holo, anti = key[:n], key[n:]
            if anti == (0,) * n and not holo[-1] and sum(holo) == 1:
                j = holo.index(1) + 1
                c = terms[key]
                if c.is_real:
                    return False, f"Re(z{j}) = 0"
                if not c.re:
                    return False, f"Im(z{j}) = 0"
    return False, "zero set of the displayed multiplier"


def nontransversality_locus(
    f: AnyMap, cert: Optional[MultiplierCertificate] = None
) -> LocusReport:
    if cert is None:
        cert = multiplier(f)
    if not cert.verified:
        raise NotVerifiedError("map does not satisfy the multiplier identity")
    vanishes, desc = _describe_multiplier_zero_set(cert.multiplier)
    return LocusReport(
        multiplier=cert.multiplier, vanishes_identically=vanishes, description=desc
    )


@dataclass(frozen=True, slots=True)
class RecenteredMap:
    """A verified map moved so that the chosen quadric point and its
    image sit at the origin, by quadric-preserving translations on both
    sides.  `scale` is |A(p)| (or 1 when A(p) = 0), kept separate so the
    recentered map still satisfies the plain multiplier identity;
    `unit_multiplier` is A(p)/scale in {-1, 0, +1}."""

    original: AnyMap
    point: Point
    image_point: Point
    map: AnyMap
    certificate: MultiplierCertificate
    scale: Fraction
    unit_multiplier: Fraction


def recenter(
    f: AnyMap, point: Sequence[ScalarLike], cert: Optional[MultiplierCertificate] = None
) -> RecenteredMap:
    p = as_point(point)
    if f.source.classify_point(p) != "on":
        raise ValueError("recentering point must lie on the source quadric")
    if cert is None:
        cert = multiplier(f)
    if not cert.verified:
        raise NotVerifiedError("map does not satisfy the multiplier identity")
    sigma = heisenberg_translation(f.source, p)
    sp = f.source.space
    fp = f.evaluate(p)
    fz, gp = fp[:-1], fp[-1]

    def translate_w(g_like: HoloPoly, z_like: Sequence[HoloPoly], den: Optional[HoloPoly]) -> HoloPoly:
        # g - conj(g(p)) D - 2i <f, conj fz>_target, with D = 1 when absent
        out = g_like
        gbar = gp.conj()
        out = out - (sp.const(gbar) if den is None else den * gbar)
        for s, comp, val in zip(f.target.signs, z_like, fz):
            coef = TWO_I * val.conj()
            out = out - comp * (coef if s > 0 else -coef)
        return out

    if isinstance(f, QuadricMap):
        new_z = tuple(c - sp.const(v) for c, v in zip(f.z_components, fz))
        new_w = translate_w(f.w_component, f.z_components, None)
        comps = tuple(c.substitute(sigma.components) for c in new_z + (new_w,))
        moved: AnyMap = QuadricMap(f.source, f.target, comps)
    else:
        den = f.denominator
        new_z = tuple(c - den * v for c, v in zip(f.z_numerators, fz))
        new_w = translate_w(f.w_numerator, f.z_numerators, den)
        nums = tuple(c.substitute(sigma.components) for c in new_z + (new_w,))
        new_den = den.substitute(sigma.components)
        moved = RationalMap(f.source, f.target, nums, new_den)

    moved_cert = multiplier(moved)
    if not moved_cert.verified:
        raise AssertionError("recentering must preserve the multiplier identity")
    expected = cert.multiplier.substitute_holo(sigma.z_components, sigma.w_component)
    if moved_cert.multiplier != expected:
        raise AssertionError("recentered multiplier disagrees with the pullback")
    a_p = moved_cert.multiplier_at_zero
    scale = abs(a_p) if a_p else Fraction(1)
    return RecenteredMap(
        original=f,
        point=p,
        image_point=fp,
        map=moved,
        certificate=moved_cert,
        scale=scale,
        unit_multiplier=a_p / scale,
    )


def span_dimension(f: AnyMap) -> int:
    """Dimension of the linear span of the components over the Gaussian
    rationals, with constants quotiented out; for a rational map the
    denominator joins the numerators."""
    if isinstance(f, QuadricMap):
        rows = [dict(c.terms) for c in f.components]
        rows.append({f.source.space.zero_key(): ONE})
    else:
        rows = [dict(c.terms) for c in f.numerators]
        rows.append(dict(f.denominator.terms))
    return rank_of_dict_rows(rows) - 1


@dataclass(frozen=True, slots=True)
class SignatureCheck:
    applicable: bool
    reason: str
    sign: int
    conditions: Tuple[Tuple[str, bool], ...]

    @property
    def all_hold(self) -> bool:
        return self.applicable and all(ok for _, ok in self.conditions)


def signature_necessary_conditions(
    f: AnyMap, cert: Optional[MultiplierCertificate] = None
) -> SignatureCheck:
    """Inequalities between the two signatures forced by a verified map
    transversal at the origin, by the sign of the multiplier there."""
    if cert is None:
        cert = multiplier(f)
    if not cert.verified:
        return SignatureCheck(False, "multiplier identity fails", 0, ())
    if not (f.source.is_standard and f.target.is_standard):
        return SignatureCheck(False, "signatures are not in standard order", 0, ())
    a0 = cert.multiplier_at((ZERO,) * f.source.n)
    if a0 == 0:
        return SignatureCheck(False, "map is not transversal at the origin", 0, ())
    n, ell = f.source.n, f.source.num_negative
    big_n, ellp = f.target.n, f.target.num_negative
    if a0 > 0:
        conds = (
            (f"ell <= ell' ({ell} <= {ellp})", ell <= ellp),
            (
                f"n - ell <= N - ell' ({n - ell} <= {big_n - ellp})",
                n - ell <= big_n - ellp,
            ),
        )
        return SignatureCheck(True, "multiplier positive at the origin", 1, conds)
    conds = (
        (f"ell' >= n - 1 - ell ({ellp} >= {n - 1 - ell})", ellp >= n - 1 - ell),
        (
            f"N - 1 - ell' >= ell ({big_n - 1 - ellp} >= {ell})",
            big_n - 1 - ellp >= ell,
        ),
    )
    return SignatureCheck(True, "multiplier negative at the origin", -1, conds)


@dataclass(frozen=True, slots=True)
class SegreContainmentReport:
    base_point: Point
    image_point: Point
    holds: bool
    residual: HoloPoly


def segre_containment(f: AnyMap, point: Sequence[ScalarLike]) -> SegreContainmentReport:
    """Does F map a full neighborhood into the single Segre variety of
    the target at F(q)?

    Membership of F(p) in that variety reads

        g(p) - conj(g(q)) - 2i <f(p), conj f(q)>_target = 0,

    and the test asks for this to hold identically in p.  For a
    polynomial or rational map that is the same as containing the whole
    image in one affine hyperplane, so it fails for maps of full span;
    restricting p to the Segre variety of the source at q would instead
    hold for every verified map, by polarizing the multiplier identity.
    """
    q = as_point(point)
    sp = f.source.space
    if len(q) != sp.n:
        raise ValueError("point has the wrong length")
    fq = f.evaluate(q)
    fz, gq = fq[:-1], fq[-1]
    if isinstance(f, QuadricMap):
        expr = f.w_component - sp.const(gq.conj())
        pairs = zip(f.target.signs, f.z_components, fz)
    else:
        expr = f.w_numerator - f.denominator * gq.conj()
        pairs = zip(f.target.signs, f.z_numerators, fz)
    for s, comp, val in pairs:
        coef = TWO_I * val.conj()
        expr = expr - comp * (coef if s > 0 else -coef)
    return SegreContainmentReport(
        base_point=q, image_point=fq, holds=expr.is_zero(), residual=expr
    )


@dataclass(frozen=True, slots=True)
class DegeneracyReport:
    """Check of the rigidity statement: a verified side-preserving map
    that is non-transversal at the origin, with target signature small
    enough (ell' < 2 ell or ell' < n - 1), must have identically
    vanishing w-component."""

    applicable: bool
    reasons: Tuple[str, ...]
    side_samples: Tuple[Tuple[Point, Fraction], ...]
    w_component_vanishes: Optional[bool]

    @property
    def consistent(self) -> Optional[bool]:
        if not self.applicable:
            return None
        return self.w_component_vanishes


def siegel_side_samples(f: AnyMap) -> Tuple[Tuple[Point, Fraction], ...]:
    """Images of sample points just inside the Siegel side above the
    origin, with the target rho value at each; used to test whether the
    map preserves sides."""
    sp = f.source.space
    out = []
    for eps in (Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)):
        pt = (ZERO,) * (sp.n - 1) + (GaussianRational(0, eps),)
        image = f.evaluate(pt)
        out.append((pt, f.target.rho_at(image)))
    return tuple(out)


def degeneracy_check(
    f: AnyMap, cert: Optional[MultiplierCertificate] = None
) -> DegeneracyReport:
    if cert is None:
        cert = multiplier(f)
    reasons: List[str] = []
    if not cert.verified:
        return DegeneracyReport(False, ("multiplier identity fails",), (), None)
    if not (f.source.is_standard and f.target.is_standard):
        return DegeneracyReport(False, ("signatures are not in standard order",), (), None)
    n, ell = f.source.n, f.source.num_negative
    ellp = f.target.num_negative
    if not (ellp < 2 * ell or ellp < n - 1):
        reasons.append(
            f"target signature too large: ell' = {ellp} with 2 ell = {2 * ell}, n - 1 = {n - 1}"
        )
    a0 = cert.multiplier_at((ZERO,) * n)
    if a0 != 0:
        reasons.append(f"map is transversal at the origin (multiplier {a0})")
    try:
        samples = siegel_side_samples(f)
    except ZeroDivisionError:
        return DegeneracyReport(
            False, tuple(reasons) + ("denominator vanishes at a side sample",), (), None
        )
    if any(v < 0 for _, v in samples):
        reasons.append("a Siegel-side sample maps to the wrong side")
    if reasons:
        return DegeneracyReport(False, tuple(reasons), samples, None)
    g = f.w_component if isinstance(f, QuadricMap) else f.w_numerator
    return DegeneracyReport(True, (), samples, g.is_zero())


def compose_quadric_maps(outer: QuadricMap, inner: QuadricMap) -> QuadricMap:
    """outer after inner; the inner target must equal the outer source."""
    if outer.source != inner.target:
        raise ValueError("maps are not composable")
    comps = tuple(c.substitute(inner.components) for c in outer.components)
    return QuadricMap(inner.source, outer.target, comps)
