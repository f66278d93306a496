"""Mixed polynomials in (z, zbar, w, wbar), their polarizations, and the
quadric chart.

Three closely related term tables share the same key layout:

* ``HermPoly``: polynomials in z, zbar, w, wbar.  Keys are tuples of
  length 2n: the holomorphic exponents (alpha_1..alpha_{n-1}, gamma)
  followed by the antiholomorphic exponents (beta_1..beta_{n-1}, delta).
  An instance is Hermitian-symmetric (hence real-valued on all of C^n)
  exactly when coeff(beta, alpha) = conj(coeff(alpha, beta)); this is
  reported by ``is_hermitian`` rather than enforced, so that flagged
  non-real diagonal restrictions can be represented too.

* ``BiholoPoly``: the polarization, where zbar, wbar are replaced by
  independent variables xibar, etabar.  Same key layout; no symmetry is
  meaningful.  ``polarize`` and ``restrict_diagonal`` convert between the
  two and are mutually inverse on Hermitian tables.

* ``ChartPoly``: polynomials in (z, zbar, u) with u real of weight 2,
  produced by restricting to the source chart w = u + i<z, zbar>.  Keys
  are (alpha_1..alpha_{n-1}, beta_1..beta_{n-1}, m) with m the u-exponent.

The weighted degree of a HermPoly key is |alpha| + |beta| + 2 gamma +
2 delta, and of a ChartPoly key |alpha| + |beta| + 2m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Sequence, Tuple

from .scalars import GaussianRational, HALF_I, ScalarLike, ZERO
from .polynomials import ExpKey, HoloPoly, TermTable, VariableSpace

PairKey = Tuple[int, ...]  # length 2n: holo exponents then antiholo exponents
PairTable = Dict[PairKey, GaussianRational]
ChartKey = Tuple[int, ...]  # length 2(n-1)+1: alpha, beta, u-exponent
ChartTable = Dict[ChartKey, GaussianRational]


def _canon(table: Dict) -> Dict:
    return {k: c for k, c in table.items() if c}


class _PairTablePoly:
    """Shared arithmetic for HermPoly and BiholoPoly term tables."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VariableSpace, terms: PairTable) -> None:
        self.space = space
        self.terms = _canon(terms)

    def _wrap(self, terms: PairTable):
        return type(self)(self.space, terms)

    def _check_space(self, other) -> None:
        if not isinstance(other, type(self)) or other.space != self.space:
            raise ValueError("operands are not compatible")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = type(self).constant(self.space, other)
        self._check_space(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = type(self).constant(self.space, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        self._check_space(other)
        out: PairTable = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                c = c1 * c2
                s = out.get(k)
                out[k] = c if s is None else s + c
        return self._wrap(out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c: ScalarLike):
        c = GaussianRational.of(c)
        if not c:
            return self._wrap({})
        return self._wrap({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = type(self).constant(self.space, other)
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.space, tuple(sorted(self.terms))))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def holo_key(self, key: PairKey) -> ExpKey:
        return key[: self.space.n]

    def anti_key(self, key: PairKey) -> ExpKey:
        return key[self.space.n :]

    def weight_of_key(self, key: PairKey) -> int:
        n = self.space.n
        return (
            sum(key[: n - 1])
            + sum(key[n : 2 * n - 1])
            + 2 * key[n - 1]
            + 2 * key[2 * n - 1]
        )

    def weight(self) -> int:
        if not self.terms:
            return -1
        return max(self.weight_of_key(k) for k in self.terms)

    def lowest_weight(self) -> int:
        if not self.terms:
            return -1
        return min(self.weight_of_key(k) for k in self.terms)

    def weighted_part(self, s: int):
        return self._wrap(
            {k: c for k, c in self.terms.items() if self.weight_of_key(k) == s}
        )

    def weighted_components(self) -> Dict[int, "_PairTablePoly"]:
        buckets: Dict[int, PairTable] = {}
        for k, c in self.terms.items():
            buckets.setdefault(self.weight_of_key(k), {})[k] = c
        return {s: self._wrap(t) for s, t in sorted(buckets.items())}

    def truncate_weight(self, s: int):
        return self._wrap(
            {k: c for k, c in self.terms.items() if self.weight_of_key(k) <= s}
        )

    # -- shared constructors ------------------------------------------

    @classmethod
    def constant(cls, space: VariableSpace, c: ScalarLike):
        c = GaussianRational.of(c)
        if not c:
            return cls(space, {})
        return cls(space, {(0,) * (2 * space.n): c})

    @classmethod
    def from_holo(cls, p: HoloPoly):
        zero = (0,) * p.space.n
        return cls(p.space, {k + zero: c for k, c in p.terms.items()})

    @classmethod
    def from_antiholo(cls, p: HoloPoly):
        """conj(p), a polynomial in the barred variables only."""
        zero = (0,) * p.space.n
        return cls(p.space, {zero + k: c.conj() for k, c in p.terms.items()})

    @classmethod
    def holo_times_antiholo(cls, p: HoloPoly, q: HoloPoly):
        """p * conj(q), computed in one pass."""
        if p.space != q.space:
            raise ValueError("operands live in different variable spaces")
        out: PairTable = {}
        for k1, c1 in p.terms.items():
            for k2, c2 in q.terms.items():
                k = k1 + k2
                c = c1 * c2.conj()
                s = out.get(k)
                out[k] = c if s is None else s + c
        return cls(p.space, out)


class HermPoly(_PairTablePoly):
    """Polynomial in (z, zbar, w, wbar); real-valued when Hermitian-symmetric."""

    def conj(self) -> "HermPoly":
        n = self.space.n
        return HermPoly(
            self.space, {k[n:] + k[:n]: c.conj() for k, c in self.terms.items()}
        )

    @property
    def is_hermitian(self) -> bool:
        n = self.space.n
        for k, c in self.terms.items():
            if self.terms.get(k[n:] + k[:n], ZERO) != c.conj():
                return False
        return True

    @classmethod
    def imag_of_holo(cls, p: HoloPoly) -> "HermPoly":
        """Im p = (p - conj p) / (2i) as a Hermitian table."""
        return (cls.from_holo(p) - cls.from_antiholo(p)).scale(-HALF_I)

    @classmethod
    def real_of_holo(cls, p: HoloPoly) -> "HermPoly":
        return (cls.from_holo(p) + cls.from_antiholo(p)).scale(Fraction(1, 2))

    def evaluate(self, point: Sequence[ScalarLike]) -> GaussianRational:
        if len(point) != self.space.n:
            raise ValueError("point dimension mismatch")
        pt = [GaussianRational.of(x) for x in point]
        conj_pt = [x.conj() for x in pt]
        n = self.space.n
        total = ZERO
        for k, c in self.terms.items():
            v = c
            for x, e in zip(pt, k[:n]):
                if e:
                    v = v * x**e
            for x, e in zip(conj_pt, k[n:]):
                if e:
                    v = v * x**e
            total = total + v
        return total

    def wbar_degree(self) -> int:
        if not self.terms:
            return -1
        return max(k[-1] for k in self.terms)

    def wbar_blocks(self) -> Dict[int, "HermPoly"]:
        """Split by wbar-exponent; block d still carries wbar-degree d keys."""
        buckets: Dict[int, PairTable] = {}
        for k, c in self.terms.items():
            buckets.setdefault(k[-1], {})[k] = c
        return {d: HermPoly(self.space, t) for d, t in buckets.items()}

    def shift_wbar(self, d: int) -> "HermPoly":
        """Multiply by wbar^d (d may be negative if every term allows it)."""
        out: PairTable = {}
        for k, c in self.terms.items():
            nd = k[-1] + d
            if nd < 0:
                raise ValueError("negative wbar exponent in shift")
            out[k[:-1] + (nd,)] = c
        return HermPoly(self.space, out)

    def substitute_holo(
        self, z_images: Sequence[HoloPoly], w_image: HoloPoly
    ) -> "HermPoly":
        """Compose with a holomorphic map: z -> z_images, w -> w_image and
        conjugates accordingly."""
        space = w_image.space
        out = HermPoly(space, {})
        n = self.space.n
        images = list(z_images) + [w_image]
        cache: Dict[ExpKey, HoloPoly] = {}

        def holo_power(key: ExpKey) -> HoloPoly:
            if key not in cache:
                acc = space.one()
                for idx, e in enumerate(key):
                    for _ in range(e):
                        acc = acc * images[idx]
                cache[key] = acc
            return cache[key]

        for k, c in self.terms.items():
            h = holo_power(k[:n])
            a = holo_power(k[n:])
            out = out + HermPoly.holo_times_antiholo(h, a).scale(c)
        return out

    def chart_restrict(self, q_form: "ChartPoly") -> "ChartPoly":
        """Substitute w = u + i*Q, wbar = u - i*Q; Q is the chart form."""
        space = self.space
        u_plus = ChartPoly.u_var(space) + q_form.scale(GaussianRational(0, 1))
        u_minus = ChartPoly.u_var(space) - q_form.scale(GaussianRational(0, 1))
        plus_pows: Dict[int, ChartPoly] = {0: ChartPoly.constant(space, 1)}
        minus_pows: Dict[int, ChartPoly] = {0: ChartPoly.constant(space, 1)}

        def pow_of(cache: Dict[int, ChartPoly], base: ChartPoly, e: int) -> ChartPoly:
            while e not in cache:
                m = max(cache)
                cache[m + 1] = cache[m] * base
            return cache[e]

        out = ChartPoly(space, {})
        n = space.n
        for k, c in self.terms.items():
            alpha, gamma = k[: n - 1], k[n - 1]
            beta, delta = k[n : 2 * n - 1], k[2 * n - 1]
            base = ChartPoly(space, {alpha + beta + (0,): c})
            term = base * pow_of(plus_pows, u_plus, gamma) * pow_of(
                minus_pows, u_minus, delta
            )
            out = out + term
        return out

    def __str__(self) -> str:
        from .expressions import format_herm

        return format_herm(self)

    __repr__ = __str__


class BiholoPoly(_PairTablePoly):
    """Polynomial in independent tuples (z, w) and (xibar, etabar)."""

    def evaluate(
        self, point: Sequence[ScalarLike], conj_point: Sequence[ScalarLike]
    ) -> GaussianRational:
        """Value at (z, w) = point, (xibar, etabar) = conj_point.

        conj_point supplies the barred variables directly; it is not
        conjugated here.
        """
        n = self.space.n
        if len(point) != n or len(conj_point) != n:
            raise ValueError("point dimension mismatch")
        pt = [GaussianRational.of(x) for x in point]
        xi = [GaussianRational.of(x) for x in conj_point]
        total = ZERO
        for k, c in self.terms.items():
            v = c
            for x, e in zip(pt, k[:n]):
                if e:
                    v = v * x**e
            for x, e in zip(xi, k[n:]):
                if e:
                    v = v * x**e
            total = total + v
        return total


def polarize(h: HermPoly) -> BiholoPoly:
    """Replace every zbar, wbar by independent xibar, etabar."""
    return BiholoPoly(h.space, dict(h.terms))


def restrict_diagonal(b: BiholoPoly) -> Tuple[HermPoly, bool]:
    """Set xibar := zbar, etabar := wbar.

    Returns (h, hermitian); when hermitian is False the table does not
    satisfy the conjugate symmetry, so h has no realness guarantee.
    """
    h = HermPoly(b.space, dict(b.terms))
    return h, h.is_hermitian


class ChartPoly:
    """Polynomial in (z, zbar, u) on the source chart; u real of weight 2."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VariableSpace, terms: ChartTable) -> None:
        self.space = space
        self.terms = _canon(terms)

    @classmethod
    def constant(cls, space: VariableSpace, c: ScalarLike) -> "ChartPoly":
        c = GaussianRational.of(c)
        if not c:
            return cls(space, {})
        return cls(space, {(0,) * (2 * space.nz + 1): c})

    @classmethod
    def u_var(cls, space: VariableSpace) -> "ChartPoly":
        return cls(space, {(0,) * (2 * space.nz) + (1,): GaussianRational(1)})

    @classmethod
    def from_z_pair(
        cls, space: VariableSpace, alpha: Sequence[int], beta: Sequence[int], c: ScalarLike
    ) -> "ChartPoly":
        key = tuple(alpha) + tuple(beta) + (0,)
        c = GaussianRational.of(c)
        if not c:
            return cls(space, {})
        return cls(space, {key: c})

    def _wrap(self, terms: ChartTable) -> "ChartPoly":
        return ChartPoly(self.space, terms)

    def __add__(self, other: "ChartPoly | ScalarLike") -> "ChartPoly":
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = ChartPoly.constant(self.space, other)
        if other.space != self.space:
            raise ValueError("operands live in different variable spaces")
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "ChartPoly":
        return self._wrap({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "ChartPoly | ScalarLike") -> "ChartPoly":
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = ChartPoly.constant(self.space, other)
        return self + (-other)

    def __mul__(self, other: "ChartPoly | ScalarLike") -> "ChartPoly":
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        if other.space != self.space:
            raise ValueError("operands live in different variable spaces")
        out: ChartTable = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                c = c1 * c2
                s = out.get(k)
                out[k] = c if s is None else s + c
        return self._wrap(out)

    def __rmul__(self, other: ScalarLike) -> "ChartPoly":
        return self.scale(other)

    def scale(self, c: ScalarLike) -> "ChartPoly":
        c = GaussianRational.of(c)
        if not c:
            return self._wrap({})
        return self._wrap({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = ChartPoly.constant(self.space, other)
        if not isinstance(other, ChartPoly):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(("ChartPoly", self.space, tuple(sorted(self.terms))))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def conj(self) -> "ChartPoly":
        nz = self.space.nz
        return self._wrap(
            {
                k[nz : 2 * nz] + k[:nz] + (k[-1],): c.conj()
                for k, c in self.terms.items()
            }
        )

    @property
    def is_real(self) -> bool:
        nz = self.space.nz
        for k, c in self.terms.items():
            mirror = k[nz : 2 * nz] + k[:nz] + (k[-1],)
            if self.terms.get(mirror, ZERO) != c.conj():
                return False
        return True

    def imag_part(self) -> "ChartPoly":
        return (self - self.conj()).scale(-HALF_I)

    def real_part(self) -> "ChartPoly":
        return (self + self.conj()).scale(Fraction(1, 2))

    def weight_of_key(self, key: ChartKey) -> int:
        return sum(key[:-1]) + 2 * key[-1]

    def weight(self) -> int:
        if not self.terms:
            return -1
        return max(self.weight_of_key(k) for k in self.terms)

    def weighted_part(self, s: int) -> "ChartPoly":
        return self._wrap(
            {k: c for k, c in self.terms.items() if self.weight_of_key(k) == s}
        )

    def evaluate(
        self, z_point: Sequence[ScalarLike], u_value: ScalarLike
    ) -> GaussianRational:
        nz = self.space.nz
        if len(z_point) != nz:
            raise ValueError("chart point needs the z-coordinates only")
        pt = [GaussianRational.of(x) for x in z_point]
        conj_pt = [x.conj() for x in pt]
        u = GaussianRational.of(u_value)
        total = ZERO
        for k, c in self.terms.items():
            v = c
            for x, e in zip(pt, k[:nz]):
                if e:
                    v = v * x**e
            for x, e in zip(conj_pt, k[nz : 2 * nz]):
                if e:
                    v = v * x**e
            if k[-1]:
                v = v * u ** k[-1]
            total = total + v
        return total

    def __str__(self) -> str:
        from .expressions import format_chart

        return format_chart(self)

    __repr__ = __str__
