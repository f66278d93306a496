"""Constructive isometries of diagonal Hermitian forms over the Gaussian
rationals.

The form is h(x, y) = sum_j s_j x_j conj(y_j) for a sign vector s in
{-1, +1}^N.  Everything is built from quasi-reflections

    sigma_{u,a}(v) = v - (1 - a) h(v, u) / h(u, u) * u,   |a| = 1,

which fix the orthogonal complement of u and scale u by a.  Two such
reflections suffice to move any vector onto any other vector of the same
nonzero norm, and the construction only ever divides by values of h, so
no square roots appear.  That is what makes exact completion of partial
isometries (and of row-orthonormal matrices to unitaries) possible over
the rationals, where Gram-Schmidt normalization would fail.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .linalg import Matrix
from .scalars import GaussianRational, ONE, ZERO, ScalarLike

Signs = Tuple[int, ...]
Vector = Tuple[GaussianRational, ...]


def _vec(x: Sequence[ScalarLike]) -> Vector:
    return tuple(GaussianRational.of(c) for c in x)


def form_inner(x: Sequence[ScalarLike], y: Sequence[ScalarLike], signs: Signs) -> GaussianRational:
    if not (len(x) == len(y) == len(signs)):
        raise ValueError("length mismatch")
    acc = ZERO
    for s, a, b in zip(signs, x, y):
        term = GaussianRational.of(a) * GaussianRational.of(b).conj()
        acc = acc + (term if s > 0 else -term)
    return acc


def form_norm(x: Sequence[ScalarLike], signs: Signs) -> GaussianRational:
    return form_inner(x, x, signs)


def reflection(u: Sequence[ScalarLike], a: ScalarLike, signs: Signs) -> Matrix:
    """Matrix of sigma_{u,a}; requires h(u, u) != 0 and |a| = 1."""
    uu = _vec(u)
    av = GaussianRational.of(a)
    if av.abs2() != 1:
        raise ValueError("reflection multiplier must be unimodular")
    nrm = form_norm(uu, signs)
    if not nrm:
        raise ValueError("reflection vector is isotropic")
    factor = (ONE - av) / nrm
    n = len(uu)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = ONE if i == j else ZERO
            cov = uu[j].conj() if signs[j] > 0 else -uu[j].conj()
            row.append(entry - factor * uu[i] * cov)
        rows.append(row)
    return Matrix(rows)


def is_isometry(m: Matrix, signs: Signs) -> bool:
    """Check m^* E m = E for E = diag(signs)."""
    e = Matrix.diagonal([GaussianRational.of(s) for s in signs])
    return m.conj_transpose() * e * m == e


def isometry_sending(x: Sequence[ScalarLike], y: Sequence[ScalarLike], signs: Signs) -> Matrix:
    """An isometry T of h with T x = y, for equal nonzero norms.

    At most two quasi-reflections: with c = h(x,x) and t = h(x,y), the
    single reflection in u = x - y with a = -conj(c-t)/(c-t) works when
    Re(c - t) != 0; otherwise flip x to -x first, which makes the real
    part 2c != 0.
    """
    xv, yv = _vec(x), _vec(y)
    c = form_norm(xv, signs)
    if form_norm(yv, signs) != c:
        raise ValueError("vectors have different norms")
    if not c:
        raise ValueError("cannot move isotropic vectors by quasi-reflections")
    if xv == yv:
        return Matrix.identity(len(xv))
    t = form_inner(xv, yv, signs)
    s = c - t
    if s + s.conj():
        u = tuple(a - b for a, b in zip(xv, yv))
        return reflection(u, -s.conj() / s, signs)
    flip = reflection(xv, -1, signs)
    t2 = -t
    s2 = c - t2
    u2 = tuple(-a - b for a, b in zip(xv, yv))
    return reflection(u2, -s2.conj() / s2, signs) * flip


def isometry_onto_basis(
    vectors: Sequence[Sequence[ScalarLike]], slots: Sequence[int], signs: Signs
) -> Matrix:
    """An isometry T with T v_i = e_{slots[i]} for every i.

    Requires h(v_i, v_j) = signs[slots[i]] delta_ij; the slots must be
    distinct.  Witt induction: since the targets are orthogonal basis
    vectors and Grams match, each step's source and target are already
    orthogonal to the previously placed e_{slots[j]}, so the reflection
    vectors live in their common orthocomplement and nothing is undone.
    """
    if len(set(slots)) != len(slots):
        raise ValueError("slots must be distinct")
    n = len(signs)
    vs = [_vec(v) for v in vectors]
    for i, v in enumerate(vs):
        for j, w in enumerate(vs):
            expect = GaussianRational.of(signs[slots[i]]) if i == j else ZERO
            if form_inner(v, w, signs) != expect:
                raise ValueError(f"Gram mismatch at pair ({i}, {j})")
    t = Matrix.identity(n)
    for i, v in enumerate(vs):
        target = tuple(ONE if k == slots[i] else ZERO for k in range(n))
        current = t.vec_mul(v)
        step = isometry_sending(current, target, signs)
        t = step * t
    return t


def extend_rows_to_isometry(
    rows: Sequence[Sequence[ScalarLike]], slots: Sequence[int], signs: Signs
) -> Matrix:
    """A matrix C with C E C^* = E whose row slots[i] equals rows[i].

    E = diag(signs).  Built as transpose(T^{-1}) for the column isometry
    T of isometry_onto_basis, so it is exact.
    """
    t = isometry_onto_basis(rows, slots, signs)
    return t.inverse().transpose()


def extend_rows_to_unitary(rows: Sequence[Sequence[ScalarLike]], n: int) -> Matrix:
    """Extend orthonormal rows (standard form on C^n) to an n x n unitary."""
    signs = (1,) * n
    return extend_rows_to_isometry(rows, tuple(range(len(rows))), signs)
