"""Origin-preserving automorphisms of a hyperquadric.

For a quadric with z-sign pattern E the group elements acting at the
origin are parametrized by (lam, eps, a, r, U) with lam > 0 rational,
eps = +-1, a a row vector, r real rational and U satisfying
U E U^* = eps E.  The action is

    z  ->  lam (z - a w) U / Delta
    w  ->  eps lam^2 w / Delta
    Delta = 1 + 2i <z, conj a>_E + (r - i <a, conj a>_E) w.

Every constructed automorphism is certified on the spot: the multiplier
identity rho(tau) |Delta|^2 = eps lam^2 rho is recomputed exactly and
must come out with the constant multiplier eps lam^2.  eps = -1 is only
realizable when the pattern has as many positive as negative signs,
which the U condition enforces by itself.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from .hermitian import HermPoly
from .linalg import Matrix
from .maps import AnyMap, MultiplierCertificate, QuadricMap, RationalMap, multiplier
from .polynomials import HoloPoly
from .quadrics import Hyperquadric
from .scalars import GaussianRational, ONE, TWO_I, ZERO, ScalarLike


@dataclass(frozen=True, slots=True, eq=False)
class AutParams:
    lam: Fraction
    eps: int
    a: Tuple[GaussianRational, ...]
    r: Fraction
    u: Matrix

    def __init__(
        self,
        lam: Union[int, Fraction],
        eps: int,
        a: Sequence[ScalarLike],
        r: Union[int, Fraction],
        u: Matrix,
    ) -> None:
        lam = Fraction(lam)
        if lam <= 0:
            raise ValueError("lam must be a positive rational")
        if eps not in (-1, 1):
            raise ValueError("eps must be +1 or -1")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "eps", int(eps))
        object.__setattr__(self, "a", tuple(GaussianRational.of(x) for x in a))
        object.__setattr__(self, "r", Fraction(r))
        object.__setattr__(self, "u", u)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AutParams):
            return NotImplemented
        return (
            self.lam == other.lam
            and self.eps == other.eps
            and self.a == other.a
            and self.r == other.r
            and self.u == other.u
        )

    def __hash__(self) -> int:
        return hash((self.lam, self.eps, self.a, self.r, self.u))


@dataclass(frozen=True, slots=True)
class Automorphism:
    quadric: Hyperquadric
    params: AutParams
    map: RationalMap
    certificate: MultiplierCertificate

    @property
    def multiplier_constant(self) -> Fraction:
        return self.params.eps * self.params.lam**2


def _signed_conj_pair(
    signs: Sequence[int], x: Sequence[GaussianRational], y: Sequence[GaussianRational]
) -> GaussianRational:
    acc = ZERO
    for s, p, q in zip(signs, x, y):
        t = p * q.conj()
        acc = acc + (t if s > 0 else -t)
    return acc


def make_automorphism(
    quadric: Hyperquadric,
    lam: Union[int, Fraction] = 1,
    eps: int = 1,
    a: Optional[Sequence[ScalarLike]] = None,
    r: Union[int, Fraction] = 0,
    u: Optional[Matrix] = None,
) -> Automorphism:
    sp = quadric.space
    nz = sp.nz
    if a is None:
        a = (0,) * nz
    if u is None:
        u = Matrix.identity(nz)
    params = AutParams(lam, eps, a, r, u)
    if u.shape != (nz, nz):
        raise ValueError(f"U must be {nz} x {nz}")
    e = Matrix.diagonal(list(quadric.signs))
    if u * e * u.conj_transpose() != e.scale(params.eps):
        raise ValueError("U does not satisfy U E U^* = eps E")

    a_norm = _signed_conj_pair(quadric.signs, params.a, params.a).real_or_raise()
    delta = sp.one()
    for j, (s, aj) in enumerate(zip(quadric.signs, params.a), start=1):
        coef = TWO_I * aj.conj()
        delta = delta + sp.z(j) * (coef if s > 0 else -coef)
    delta = delta + sp.w() * GaussianRational(params.r, -a_norm)

    shifted = [sp.z(j) - sp.w() * params.a[j - 1] for j in range(1, sp.n)]
    z_nums = []
    for k in range(nz):
        comp = sp.zero()
        for j in range(nz):
            comp = comp + shifted[j] * params.u[j, k]
        z_nums.append(comp * params.lam)
    w_num = sp.w() * (params.eps * params.lam**2)

    rmap = RationalMap(quadric, quadric, tuple(z_nums) + (w_num,), delta)
    cert = multiplier(rmap)
    expected = HermPoly.constant(sp, params.eps * params.lam**2)
    if not cert.verified or cert.multiplier != expected:
        raise AssertionError("automorphism construction violates the multiplier identity")
    return Automorphism(quadric=quadric, params=params, map=rmap, certificate=cert)


def compose(aut: Automorphism, f: AnyMap) -> RationalMap:
    """The automorphism applied after the map, as one rational map.

    Substituting into the closed form keeps a single denominator:
    numerators lam (P - a P_w) U and eps lam^2 P_w over
    D + 2i <P, conj a>_E + (r - i |a|^2_E) P_w.
    """
    if f.target != aut.quadric:
        raise ValueError("map target does not match the automorphism's quadric")
    sp = f.source.space
    params = aut.params
    signs = aut.quadric.signs
    nz_t = aut.quadric.space.nz
    if isinstance(f, QuadricMap):
        p_z, p_w = f.z_components, f.w_component
        den = sp.one()
    else:
        p_z, p_w = f.z_numerators, f.w_numerator
        den = f.denominator

    a_norm = _signed_conj_pair(signs, params.a, params.a).real_or_raise()
    new_den = den
    for s, comp, aj in zip(signs, p_z, params.a):
        coef = TWO_I * aj.conj()
        new_den = new_den + comp * (coef if s > 0 else -coef)
    new_den = new_den + p_w * GaussianRational(params.r, -a_norm)

    shifted = [p_z[j] - p_w * params.a[j] for j in range(nz_t)]
    nums = []
    for k in range(nz_t):
        comp = sp.zero()
        for j in range(nz_t):
            comp = comp + shifted[j] * params.u[j, k]
        nums.append(comp * params.lam)
    nums.append(p_w * (params.eps * params.lam**2))
    return RationalMap(f.source, aut.quadric, tuple(nums), new_den)


def conjugate_by_permutation(
    aut: Automorphism, perm: Sequence[int], quadric: Hyperquadric
) -> Automorphism:
    """Rewrite the automorphism in permuted coordinates.

    perm describes the variable change z*_j = z_{perm[j-1]} (1-based
    values) carrying the new quadric's pattern onto the old one; the
    returned automorphism acts on the new quadric.
    """
    nz = aut.quadric.space.nz
    if sorted(perm) != list(range(1, nz + 1)):
        raise ValueError("perm must be a permutation of 1..nz")
    if quadric.space.nz != nz:
        raise ValueError("quadric has the wrong dimension")
    for j in range(nz):
        if aut.quadric.signs[j] != quadric.signs[perm[j] - 1]:
            raise ValueError("permutation does not carry the sign patterns over")
    p = Matrix(
        [
            [ONE if k + 1 == perm[j] else ZERO for j in range(nz)]
            for k in range(nz)
        ]
    )
    params = aut.params
    a_new = p.vec_mul(params.a)
    u_new = p * params.u * p.transpose()
    return make_automorphism(
        quadric, lam=params.lam, eps=params.eps, a=a_new, r=params.r, u=u_new
    )


def random_indefinite_unitary(
    signs: Sequence[int],
    rng: Union[int, random.Random, None] = None,
    steps: Optional[int] = None,
) -> Matrix:
    """A pseudorandom exact solution of U E U^* = E.

    Built from rational rotations (1-t^2, 2t)/(1+t^2) inside same-sign
    pairs, rational boosts (1+t^2, 2t)/(1-t^2) across opposite-sign
    pairs, and unimodular diagonal phases; every factor preserves the
    form exactly, so the product does too.
    """
    if isinstance(rng, random.Random):
        r = rng
    else:
        r = random.Random(rng)
    nz = len(signs)
    if any(s not in (-1, 1) for s in signs):
        raise ValueError("signs must be -1 or +1")
    m = Matrix.identity(nz)
    if steps is None:
        steps = 2 * nz
    if nz >= 2:
        for _ in range(steps):
            i, j = sorted(r.sample(range(nz), 2))
            t = Fraction(r.randint(-6, 6), r.randint(1, 6))
            g = [[ONE if p == q else ZERO for q in range(nz)] for p in range(nz)]
            if signs[i] == signs[j]:
                den = 1 + t * t
                c = GaussianRational((1 - t * t) / den)
                s = GaussianRational(2 * t / den)
                g[i][i], g[i][j] = c, s
                g[j][i], g[j][j] = -s, c
            else:
                if abs(t) == 1:
                    t = Fraction(r.randint(2, 6))
                den = 1 - t * t
                ch = GaussianRational((1 + t * t) / den)
                sh = GaussianRational(2 * t / den)
                g[i][i], g[i][j] = ch, sh
                g[j][i], g[j][j] = sh, ch
            m = m * Matrix(g)
    phases = []
    for _ in range(nz):
        kind = r.randrange(3)
        if kind == 0:
            phases.append(r.choice([ONE, -ONE]))
        elif kind == 1:
            phases.append(r.choice([GaussianRational(0, 1), GaussianRational(0, -1)]))
        else:
            t = Fraction(r.randint(-6, 6), r.randint(1, 6))
            den = 1 + t * t
            phases.append(GaussianRational((1 - t * t) / den, 2 * t / den))
    m = m * Matrix.diagonal(phases)
    e = Matrix.diagonal(list(signs))
    if m * e * m.conj_transpose() != e:
        raise AssertionError("random factor construction broke the form")
    return m
