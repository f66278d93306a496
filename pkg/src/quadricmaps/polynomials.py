"""Sparse holomorphic polynomials in (z_1..z_{n-1}, w) with weighted grading.

Representation
--------------
A polynomial lives over a ``VariableSpace`` of source dimension n, whose
variables are z_1, ..., z_{n-1} and w.  Terms are stored sparsely:

    terms: dict[exponent tuple, GaussianRational]

where the exponent tuple has length n, entries 0..n-2 are the z-exponents
and the last entry is the w-exponent.  Zero coefficients are never stored;
two polynomials are equal exactly when their term tables are equal.

The grading assigns weight 1 to each z_j and weight 2 to w, so the weight
of the exponent tuple (a_1, ..., a_{n-1}, g) is a_1 + ... + a_{n-1} + 2g.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

from .scalars import GaussianRational, ScalarLike, ZERO, ONE

ExpKey = Tuple[int, ...]
TermTable = Dict[ExpKey, GaussianRational]


@dataclass(frozen=True, slots=True)
class VariableSpace:
    """The source coordinate roster z_1..z_{n-1}, w for dimension n >= 2."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"source dimension must be >= 2, got n={self.n}")

    @property
    def nz(self) -> int:
        """Number of z-variables, n - 1."""
        return self.n - 1

    def zero_key(self) -> ExpKey:
        return (0,) * self.n

    def weight_of_key(self, key: ExpKey) -> int:
        return sum(key[:-1]) + 2 * key[-1]

    def zero(self) -> "HoloPoly":
        return HoloPoly(self, {})

    def const(self, c: ScalarLike) -> "HoloPoly":
        c = GaussianRational.of(c)
        if not c:
            return self.zero()
        return HoloPoly(self, {self.zero_key(): c})

    def one(self) -> "HoloPoly":
        return self.const(1)

    def z(self, j: int) -> "HoloPoly":
        """The variable z_j, 1-indexed."""
        if not 1 <= j <= self.nz:
            raise ValueError(f"z index {j} out of range 1..{self.nz}")
        key = [0] * self.n
        key[j - 1] = 1
        return HoloPoly(self, {tuple(key): ONE})

    def w(self) -> "HoloPoly":
        key = [0] * self.n
        key[-1] = 1
        return HoloPoly(self, {tuple(key): ONE})

    def z_tuple(self) -> Tuple["HoloPoly", ...]:
        return tuple(self.z(j) for j in range(1, self.nz + 1))

    def monomial(self, key: ExpKey, c: ScalarLike = 1) -> "HoloPoly":
        if len(key) != self.n:
            raise ValueError("exponent tuple has wrong length")
        c = GaussianRational.of(c)
        if not c:
            return self.zero()
        return HoloPoly(self, {tuple(key): c})

    def z_monomials_of_degree(self, d: int) -> list[ExpKey]:
        """All pure-z exponent tuples of total degree d (w-exponent 0)."""
        out: list[ExpKey] = []

        def rec(prefix: list[int], rest: int, slots: int) -> None:
            if slots == 1:
                out.append(tuple(prefix + [rest, 0]))
                return
            for e in range(rest, -1, -1):
                rec(prefix + [e], rest - e, slots - 1)

        if self.nz == 0:
            return []
        rec([], d, self.nz)
        return out

    def monomials_of_weight(self, s: int) -> list[ExpKey]:
        """All exponent tuples of weighted degree exactly s."""
        out: list[ExpKey] = []
        for g in range(s // 2 + 1):
            for key in self.z_monomials_of_degree(s - 2 * g):
                out.append(key[:-1] + (g,))
        return out


def _canon(terms: TermTable) -> TermTable:
    return {k: c for k, c in terms.items() if c}


@dataclass(frozen=True, slots=True, eq=False)
class HoloPoly:
    """A sparse holomorphic polynomial over a VariableSpace."""

    space: VariableSpace
    terms: TermTable

    def __init__(self, space: VariableSpace, terms: TermTable) -> None:
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "terms", _canon(terms))

    # -- ring operations ----------------------------------------------

    def _check_space(self, other: "HoloPoly") -> None:
        if other.space != self.space:
            raise ValueError("operands live in different variable spaces")

    def __add__(self, other: "HoloPoly | ScalarLike") -> "HoloPoly":
        if not isinstance(other, HoloPoly):
            other = self.space.const(other)
        self._check_space(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return HoloPoly(self.space, out)

    __radd__ = __add__

    def __neg__(self) -> "HoloPoly":
        return HoloPoly(self.space, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "HoloPoly | ScalarLike") -> "HoloPoly":
        if not isinstance(other, HoloPoly):
            other = self.space.const(other)
        return self + (-other)

    def __rsub__(self, other: ScalarLike) -> "HoloPoly":
        return (-self) + other

    def __mul__(self, other: "HoloPoly | ScalarLike") -> "HoloPoly":
        if not isinstance(other, HoloPoly):
            return self.scale(other)
        self._check_space(other)
        out: TermTable = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                c = c1 * c2
                s = out.get(k)
                out[k] = c if s is None else s + c
        return HoloPoly(self.space, out)

    def __rmul__(self, other: ScalarLike) -> "HoloPoly":
        return self.scale(other)

    def scale(self, c: ScalarLike) -> "HoloPoly":
        c = GaussianRational.of(c)
        if not c:
            return self.space.zero()
        return HoloPoly(self.space, {k: v * c for k, v in self.terms.items()})

    def __pow__(self, k: int) -> "HoloPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = self.space.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self.space.const(other)
        if not isinstance(other, HoloPoly):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.space, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- inspection ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> GaussianRational:
        return self.terms.get(self.space.zero_key(), ZERO)

    def coefficient(self, key: ExpKey) -> GaussianRational:
        return self.terms.get(tuple(key), ZERO)

    def sorted_keys(self) -> list[ExpKey]:
        """Canonical term order: by weight, then lexicographic."""
        return sorted(self.terms, key=lambda k: (self.space.weight_of_key(k), k))

    def weight(self) -> int:
        """Largest weighted degree among terms (zero polynomial: -1)."""
        if not self.terms:
            return -1
        return max(self.space.weight_of_key(k) for k in self.terms)

    def lowest_weight(self) -> int:
        if not self.terms:
            return -1
        return min(self.space.weight_of_key(k) for k in self.terms)

    # -- weighted grading ---------------------------------------------

    def weighted_components(self) -> Dict[int, "HoloPoly"]:
        """Split into weighted-homogeneous parts, indexed by weight.

        Only nonzero weights appear as keys; the parts sum back to self.
        """
        buckets: Dict[int, TermTable] = {}
        for k, c in self.terms.items():
            buckets.setdefault(self.space.weight_of_key(k), {})[k] = c
        return {s: HoloPoly(self.space, t) for s, t in sorted(buckets.items())}

    def weighted_part(self, s: int) -> "HoloPoly":
        t = {k: c for k, c in self.terms.items() if self.space.weight_of_key(k) == s}
        return HoloPoly(self.space, t)

    def truncate_weight(self, s: int) -> "HoloPoly":
        """Drop all terms of weighted degree > s."""
        t = {k: c for k, c in self.terms.items() if self.space.weight_of_key(k) <= s}
        return HoloPoly(self.space, t)

    def w_degree(self) -> int:
        if not self.terms:
            return -1
        return max(k[-1] for k in self.terms)

    def w_coefficient(self, g: int) -> "HoloPoly":
        """Coefficient of w^g, itself a polynomial in z only."""
        t: TermTable = {}
        for k, c in self.terms.items():
            if k[-1] == g:
                t[k[:-1] + (0,)] = c
        return HoloPoly(self.space, t)

    # -- evaluation and substitution ----------------------------------

    def evaluate(self, point: Sequence[ScalarLike]) -> GaussianRational:
        if len(point) != self.space.n:
            raise ValueError(
                f"point has {len(point)} coordinates, space needs {self.space.n}"
            )
        pt = [GaussianRational.of(x) for x in point]
        total = ZERO
        for k, c in self.terms.items():
            v = c
            for x, e in zip(pt, k):
                if e:
                    v = v * x**e
            total = total + v
        return total

    def substitute(self, images: Sequence["HoloPoly"]) -> "HoloPoly":
        """Composition: plug images[j] in for z_{j+1} and images[-1] for w."""
        if len(images) != self.space.n:
            raise ValueError(
                f"need {self.space.n} images (z_1..z_{self.space.nz}, w), got {len(images)}"
            )
        target_space = images[0].space
        for im in images:
            if im.space != target_space:
                raise ValueError("images live in different variable spaces")
        out = target_space.zero()
        power_cache: list[Dict[int, HoloPoly]] = [
            {0: target_space.one()} for _ in images
        ]
        for k, c in self.terms.items():
            term = target_space.const(c)
            for idx, e in enumerate(k):
                if e == 0:
                    continue
                cache = power_cache[idx]
                if e not in cache:
                    p = max(cache)
                    acc = cache[p]
                    while p < e:
                        acc = acc * images[idx]
                        p += 1
                        cache[p] = acc
                term = term * cache[e]
            out = out + term
        return out

    def conj_coefficients(self) -> "HoloPoly":
        """Same monomials with conjugated coefficients (used for polarization)."""
        return HoloPoly(self.space, {k: c.conj() for k, c in self.terms.items()})

    # -- formatting ---------------------------------------------------

    def __str__(self) -> str:
        from .expressions import format_poly

        return format_poly(self)

    def __repr__(self) -> str:
        return f"HoloPoly({self!s})"


def compose_rational(
    p: HoloPoly, numerators: Sequence[HoloPoly], denominator: HoloPoly
) -> Tuple[HoloPoly, HoloPoly]:
    """p composed with the map (numerators / denominator).

    Returns (numerator, denominator) with denominator a power of the input
    one: p(P/D) = sum_k c_k P^k D^(d-|k|) / D^d where d is the top total
    degree of p.  No cancellation is attempted.
    """
    if len(numerators) != p.space.n:
        raise ValueError("wrong number of numerator components")
    space = denominator.space
    d = max((sum(k) for k in p.terms), default=0)
    den_pows: Dict[int, HoloPoly] = {0: space.one()}

    def den_pow(e: int) -> HoloPoly:
        if e not in den_pows:
            den_pows[e] = den_pow(e - 1) * denominator
        return den_pows[e]

    num = space.zero()
    for k, c in p.terms.items():
        term = space.const(c)
        for idx, e in enumerate(k):
            for _ in range(e):
                term = term * numerators[idx]
        num = num + term * den_pow(d - sum(k))
    return num, den_pow(d)


def weighted_truncation(num: HoloPoly, den: HoloPoly, order: int) -> HoloPoly:
    """Weighted-order jet of the germ num/den at 0; den(0) must be nonzero.

    Uses the geometric series for 1/den: with den = d0 (1 + E) and E of
    positive lowest weight, 1/den = (1/d0) sum (-E)^k, truncated at the
    requested weighted order.
    """
    d0 = den.constant_term()
    if not d0:
        raise ValueError("denominator vanishes at the origin")
    e = (den.scale(1 / d0) - 1).truncate_weight(order)
    if e.is_zero():
        return num.scale(1 / d0).truncate_weight(order)
    inv = den.space.one()
    acc = den.space.one()
    lw = e.lowest_weight()
    steps = order // max(lw, 1)
    for _ in range(steps):
        acc = (acc * (-e)).truncate_weight(order)
        if acc.is_zero():
            break
        inv = inv + acc
    return (num * inv).truncate_weight(order).scale(1 / d0)


def divide_exact(num: HoloPoly, den: HoloPoly) -> Optional[HoloPoly]:
    """num / den when den divides num exactly, else None.

    den must not vanish at the origin; then the quotient, if it exists,
    equals the weighted jet of num/den at the weight of num.
    """
    if not den.constant_term():
        raise ValueError("denominator vanishes at the origin")
    if num.is_zero():
        return num
    q = weighted_truncation(num, den, num.weight())
    return q if q * den == num else None
