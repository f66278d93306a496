"""Real hyperquadrics in complex space and their model maps.

A hyperquadric here is the set Im w = <z, zbar> in coordinates
(z_1, ..., z_{n-1}, w), where <z, zbar> = sum_j s_j |z_j|^2 for a vector
of signs s_j in {-1, +1}.  The standard model of signature ell puts the
-1 signs on the first ell slots; the generalized model used when
comparing source and target signatures places a second negative block
starting at slot n.  The defining polynomial

    rho = Im w - <z, zbar>

is represented exactly as a Hermitian polynomial, and the side of a
point (rho > 0, the Siegel side, or rho < 0) is decided in exact
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, TYPE_CHECKING

from .hermitian import ChartPoly, HermPoly
from .polynomials import HoloPoly, VariableSpace
from .scalars import GaussianRational, HALF_I, ONE, TWO_I, ZERO, ScalarLike

if TYPE_CHECKING:
    from .maps import QuadricMap

Point = Tuple[GaussianRational, ...]


def as_point(coords: Sequence[ScalarLike]) -> Point:
    return tuple(GaussianRational.of(c) for c in coords)


@dataclass(frozen=True, slots=True)
class Signature:
    """Ambient dimension n and number ell of negative signs, for the
    standard model in C^n (coordinates z_1..z_{n-1}, w)."""

    n: int
    ell: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("need at least one z variable")
        if not 0 <= self.ell <= self.n - 1:
            raise ValueError(f"ell must lie in [0, {self.n - 1}]")

    @property
    def num_z(self) -> int:
        return self.n - 1

    def signs(self) -> Tuple[int, ...]:
        return tuple(-1 if j <= self.ell else 1 for j in range(1, self.n))


@dataclass(frozen=True, slots=True)
class GeneralizedDelta:
    """Sign pattern delta_{j} for the generalized model: -1 when j <= ell
    or n <= j <= n + tau - 1 with tau = ellp - ell, else +1.  Indices j
    run over 1..big_n - 1."""

    n: int
    ell: int
    ellp: int
    big_n: int

    def __post_init__(self) -> None:
        tau = self.ellp - self.ell
        if tau < 0:
            raise ValueError("ellp must be at least ell")
        if not 0 <= self.ell <= self.n - 1:
            raise ValueError("ell out of range for the source dimension")
        if self.big_n < self.n:
            raise ValueError("target dimension smaller than source")
        if self.n + tau - 1 > self.big_n - 1:
            raise ValueError("second negative block does not fit")

    @property
    def tau(self) -> int:
        return self.ellp - self.ell

    def delta(self, j: int) -> int:
        if not 1 <= j <= self.big_n - 1:
            raise ValueError(f"index {j} out of range")
        if j <= self.ell or self.n <= j <= self.n + self.tau - 1:
            return -1
        return 1

    def signs(self) -> Tuple[int, ...]:
        return tuple(self.delta(j) for j in range(1, self.big_n))


def signed_inner(
    x: Sequence[ScalarLike], y: Sequence[ScalarLike], signs: Sequence[int]
) -> GaussianRational:
    """sum_j s_j x_j conj(y_j)."""
    if not (len(x) == len(y) == len(signs)):
        raise ValueError("length mismatch")
    acc = ZERO
    for s, a, b in zip(signs, x, y):
        t = GaussianRational.of(a) * GaussianRational.of(b).conj()
        acc = acc + (t if s > 0 else -t)
    return acc


def hermitian_q(space: VariableSpace, signs: Sequence[int]) -> HermPoly:
    """Q(z, zbar) = sum_j s_j z_j conj(z_j) in the given space."""
    if len(signs) != space.nz:
        raise ValueError("sign pattern does not match the space")
    q = HermPoly.constant(space, 0)
    for j, s in enumerate(signs, start=1):
        zj = space.z(j)
        q = q + HermPoly.holo_times_antiholo(zj, zj).scale(s)
    return q


def chart_q(space: VariableSpace, signs: Sequence[int]) -> ChartPoly:
    """The same Q in chart variables (z, conj z, u), for restricting
    Hermitian polynomials to the quadric via w = u + iQ."""
    if len(signs) != space.nz:
        raise ValueError("sign pattern does not match the space")
    q = ChartPoly.constant(space, 0)
    unit = [0] * space.nz
    for j, s in enumerate(signs, start=1):
        e = tuple(unit[: j - 1] + [1] + unit[j:])
        q = q + ChartPoly.from_z_pair(space, e, e, s)
    return q


@dataclass(frozen=True, slots=True, eq=False)
class Hyperquadric:
    space: VariableSpace
    signs: Tuple[int, ...]

    def __init__(self, space: VariableSpace, signs: Sequence[int]) -> None:
        signs = tuple(int(s) for s in signs)
        if len(signs) != space.nz:
            raise ValueError("one sign per z variable required")
        if any(s not in (-1, 1) for s in signs):
            raise ValueError("signs must be -1 or +1")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "signs", signs)

    @staticmethod
    def standard(n: int, ell: int) -> "Hyperquadric":
        sig = Signature(n, ell)
        return Hyperquadric(VariableSpace(n), sig.signs())

    @staticmethod
    def generalized(n: int, ell: int, ellp: int, big_n: int) -> "Hyperquadric":
        gd = GeneralizedDelta(n, ell, ellp, big_n)
        return Hyperquadric(VariableSpace(big_n), gd.signs())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hyperquadric):
            return NotImplemented
        return self.space == other.space and self.signs == other.signs

    def __hash__(self) -> int:
        return hash((self.space, self.signs))

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def num_negative(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def num_positive(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def is_standard(self) -> bool:
        return self.signs == Signature(self.n, self.num_negative).signs()

    def signature(self) -> Signature:
        if not self.is_standard:
            raise ValueError("sign pattern is not in standard order")
        return Signature(self.n, self.num_negative)

    def q_form(self) -> HermPoly:
        return hermitian_q(self.space, self.signs)

    def defining_poly(self) -> HermPoly:
        """rho = Im w - Q as an exact Hermitian polynomial."""
        w = self.space.w()
        return HermPoly.imag_of_holo(w) - self.q_form()

    def rho_at(self, point: Sequence[ScalarLike]) -> Fraction:
        p = as_point(point)
        if len(p) != self.n:
            raise ValueError(f"point must have {self.n} coordinates")
        val = self.defining_poly().evaluate(p)
        return val.real_or_raise()

    def classify_point(self, point: Sequence[ScalarLike]) -> str:
        """'on', 'inside' (rho > 0, the Siegel side) or 'outside'."""
        r = self.rho_at(point)
        if r == 0:
            return "on"
        return "inside" if r > 0 else "outside"

    def signed_inner_at(
        self, x: Sequence[ScalarLike], y: Sequence[ScalarLike]
    ) -> GaussianRational:
        return signed_inner(x, y, self.signs)

    def segre_variety(self, point: Sequence[ScalarLike]) -> "SegreVariety":
        return SegreVariety(self, as_point(point))

    def __str__(self) -> str:
        if self.is_standard:
            return f"hyperquadric(n={self.n}, ell={self.num_negative})"
        return f"hyperquadric(n={self.n}, signs={self.signs})"


@dataclass(frozen=True, slots=True)
class SegreVariety:
    """Complex hypersurface w = conj(w_q) + 2i <z, conj(z_q)> attached to
    the point q; q lies on the quadric exactly when q is on its own
    Segre variety, and membership is reflexive."""

    quadric: Hyperquadric
    base_point: Point

    def __post_init__(self) -> None:
        if len(self.base_point) != self.quadric.n:
            raise ValueError("base point has the wrong length")

    def defining_poly(self) -> HoloPoly:
        """Holomorphic w - conj(w_q) - 2i <z, conj(z_q)>; vanishing means
        membership."""
        sp = self.quadric.space
        zq = self.base_point[:-1]
        wq = self.base_point[-1]
        p = sp.w() - sp.const(wq.conj())
        for j, (s, c) in enumerate(zip(self.quadric.signs, zq), start=1):
            coef = TWO_I * c.conj()
            p = p - sp.z(j) * (coef if s > 0 else -coef)
        return p

    def contains(self, point: Sequence[ScalarLike]) -> bool:
        p = as_point(point)
        if len(p) != self.quadric.n:
            raise ValueError("point has the wrong length")
        return not self.defining_poly().evaluate(p)


@dataclass(frozen=True, slots=True, eq=False)
class ProjectivePoint:
    """Homogeneous coordinates, equal up to a nonzero scalar."""

    coords: Tuple[GaussianRational, ...]

    def __init__(self, coords: Sequence[ScalarLike]) -> None:
        cs = tuple(GaussianRational.of(c) for c in coords)
        if all(not c for c in cs):
            raise ValueError("all homogeneous coordinates vanish")
        object.__setattr__(self, "coords", cs)

    def normalized(self) -> Tuple[GaussianRational, ...]:
        lead = next(c for c in self.coords if c)
        return tuple(c / lead for c in self.coords)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        if len(self.coords) != len(other.coords):
            return False
        return self.normalized() == other.normalized()

    def __hash__(self) -> int:
        return hash(self.normalized())

    def __str__(self) -> str:
        from .scalars import format_scalar

        return "[" + " : ".join(format_scalar(c) for c in self.coords) + "]"


def interchange_order(n: int, ell: int, ellp: int, big_n: int) -> Tuple[int, ...]:
    """Slot j of the generalized model reads standard variable
    z*_{order[j-1]}.  Shared by interchange_map and the normal-form
    pipeline, which transports automorphisms along the same permutation."""
    gd = GeneralizedDelta(n, ell, ellp, big_n)
    tau = gd.tau
    return tuple(
        list(range(1, ell + 1))
        + list(range(ellp + 1, n - 1 + tau + 1))
        + list(range(ell + 1, ellp + 1))
        + list(range(n + tau, big_n))
    )


def interchange_map(n: int, ell: int, ellp: int, big_n: int) -> "QuadricMap":
    """Coordinate permutation pulling the generalized sign pattern back
    to the standard one: a map from the standard quadric of signature
    ellp in C^big_n onto the generalized model, with multiplier 1.

    Blocks, in source coordinates z*_1..z*_{big_n - 1}:
    (z*_1..z*_ell, z*_{ellp+1}..z*_{n-1+tau}, z*_{ell+1}..z*_{ellp},
    z*_{n+tau}..z*_{big_n-1}, w*).
    """
    from .maps import QuadricMap

    sp = VariableSpace(big_n)
    order = interchange_order(n, ell, ellp, big_n)
    components = tuple(sp.z(j) for j in order) + (sp.w(),)
    return QuadricMap(
        source=Hyperquadric.standard(big_n, ellp),
        target=Hyperquadric.generalized(n, ell, ellp, big_n),
        components=components,
    )


def flip_map(n: int, ell: int) -> "QuadricMap":
    """The sign flip (z, w) -> (z_{ell*+1}..z_{n-1}, z_1..z_{ell*}, -w)
    with ell* = n - 1 - ell, pulling rho_ell back to -rho_{ell*}: a map
    from signature ell* onto signature ell with multiplier -1."""
    from .maps import QuadricMap

    ell_star = n - 1 - ell
    sp = VariableSpace(n)
    order = list(range(ell_star + 1, n)) + list(range(1, ell_star + 1))
    components = tuple(sp.z(j) for j in order) + (-sp.w(),)
    return QuadricMap(
        source=Hyperquadric.standard(n, ell_star),
        target=Hyperquadric.standard(n, ell),
        components=components,
    )


def heisenberg_translation(quadric: Hyperquadric, point: Sequence[ScalarLike]) -> "QuadricMap":
    """Translation (z, w) -> (z + z_p, w + w_p + 2i <z, conj(z_p)>) by a
    point p on the quadric; preserves rho exactly."""
    from .maps import QuadricMap

    p = as_point(point)
    if quadric.classify_point(p) != "on":
        raise ValueError("translation base point must lie on the quadric")
    sp = quadric.space
    zp, wp = p[:-1], p[-1]
    z_parts = tuple(sp.z(j) + sp.const(zp[j - 1]) for j in range(1, sp.n))
    w_part = sp.w() + sp.const(wp)
    for j, (s, c) in enumerate(zip(quadric.signs, zp), start=1):
        coef = TWO_I * c.conj()
        w_part = w_part + sp.z(j) * (coef if s > 0 else -coef)
    return QuadricMap(source=quadric, target=quadric, components=z_parts + (w_part,))


def cayley_transform(n: int) -> Tuple[HoloPoly, ...]:
    """Homogeneous components (i + w, 2 z_1, ..., 2 z_{n-1}, i - w) of the
    map to projective space; see cayley_identity_check."""
    sp = VariableSpace(n)
    iconst = sp.const(HALF_I * 2)
    comps = [iconst + sp.w()]
    comps.extend(sp.z(j).scale(2) for j in range(1, n))
    comps.append(iconst - sp.w())
    return tuple(comps)


def cayley_signs(n: int, ell: int) -> Tuple[int, ...]:
    """Signs making sum_k s_k |Psi_k|^2 equal 4 rho: + on slot 0 and the
    first ell z slots, - on the remaining z slots and the last slot."""
    Signature(n, ell)
    return (1,) + tuple(1 if j <= ell else -1 for j in range(1, n)) + (-1,)


def cayley_identity_check(n: int, ell: int) -> bool:
    """Exact check that the weighted norm of the Cayley components is
    4 rho for the standard quadric of signature ell."""
    comps = cayley_transform(n)
    signs = cayley_signs(n, ell)
    sp = VariableSpace(n)
    total = HermPoly.constant(sp, 0)
    for s, c in zip(signs, comps):
        total = total + HermPoly.holo_times_antiholo(c, c).scale(s)
    rho = Hyperquadric.standard(n, ell).defining_poly()
    return total == rho.scale(4)
