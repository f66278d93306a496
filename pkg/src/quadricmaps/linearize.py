"""The linearized operator on the model quadric and block-rank classes.

`linearized_operator` realizes the chart-side linearization

    L(p, q) = Im{ q(z, w) - 2i sum_j delta_j p_j(z, w) conj(z_j) }

restricted to w = u + i Q(z, zbar).  Solving L(p, q) = A for weighted
homogeneous data is exact linear algebra over the rationals; the solver
reports the full affine solution space and, where a rigidity statement
applies, whether the outcome matches it.  The block-rank class of a
Hermitian polynomial bounds, for every bidegree block in (z, zbar) and
each power of w, wbar, the rank of its coefficient matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .hermitian import ChartPoly, HermPoly
from .linalg import Matrix, SparseRealSystem
from .polynomials import ExpKey, HoloPoly, VariableSpace
from .quadrics import Hyperquadric, chart_q
from .scalars import HALF_I, I, TWO_I, ZERO, GaussianRational

Family = Tuple[HoloPoly, ...]


def linearized_operator(
    quadric: Hyperquadric, p: Sequence[HoloPoly], q: HoloPoly
) -> ChartPoly:
    """L(p, q) on the chart (z, zbar, u) of the given quadric.

    p must have one component per z variable; components may involve w.
    """
    space = quadric.space
    if len(p) != space.nz:
        raise ValueError("p needs one component per z variable")
    for comp in p:
        if comp.space != space:
            raise ValueError("p lives in the wrong variable space")
    if q.space != space:
        raise ValueError("q lives in the wrong variable space")
    x = HermPoly.from_holo(q)
    for j, comp in enumerate(p, start=1):
        term = HermPoly.holo_times_antiholo(comp, space.z(j))
        x = x - term.scale(TWO_I * quadric.signs[j - 1])
    im = (x - x.conj()).scale(-HALF_I)
    return im.chart_restrict(chart_q(space, quadric.signs))


# -- block-rank membership --------------------------------------------


@dataclass(frozen=True)
class BlockCertificate:
    """One bidegree block with a rank factorization.

    The block equals sum_j left_j(z) * conj(right_j)(z) * w^gamma * wbar^delta.
    """

    mu: int
    nu: int
    gamma: int
    delta: int
    rank: int
    left: Family
    right: Family


@dataclass(frozen=True)
class MembershipReport:
    """Verdict of the block-rank test: member iff every block rank <= k."""

    k: int
    member: bool
    max_rank: int
    blocks: Tuple[BlockCertificate, ...]
    offending: Optional[Tuple[int, int, int, int]]
    note: str


def _key_degrees(key: Tuple[int, ...], n: int) -> Tuple[int, int, int, int]:
    return (sum(key[: n - 1]), sum(key[n : 2 * n - 1]), key[n - 1], key[2 * n - 1])


def block_rank_membership(a: HermPoly, k: int) -> MembershipReport:
    """Test every (mu, nu, gamma, delta) block of a for rank <= k.

    a must vanish to order >= 2 at 0.  Certificates re-expand to a
    exactly; a refutation names the first block of too-large rank.
    """
    if k < 0:
        raise ValueError("rank bound must be nonnegative")
    n = a.space.n
    for key in a.terms:
        if sum(key) < 2:
            raise ValueError("polynomial must vanish to order >= 2 at 0")

    buckets: Dict[Tuple[int, int, int, int], Dict] = {}
    for key, c in a.terms.items():
        buckets.setdefault(_key_degrees(key, n), {})[key] = c

    blocks: List[BlockCertificate] = []
    offending = None
    max_rank = 0
    space = a.space
    for (mu, nu, gamma, delta), terms in sorted(buckets.items()):
        rows = sorted({key[: n - 1] for key in terms})
        cols = sorted({key[n : 2 * n - 1] for key in terms})
        mat = Matrix(
            [
                [
                    terms.get(r + (gamma,) + c + (delta,), ZERO)
                    for c in cols
                ]
                for r in rows
            ]
        )
        left_f, right_f = mat.rank_factorization()
        rank = left_f.shape[1]
        max_rank = max(max_rank, rank)
        if rank > k and offending is None:
            offending = (mu, nu, gamma, delta)
        lefts = []
        rights = []
        for j in range(rank):
            lp = HoloPoly(
                space,
                {
                    r + (0,): left_f[i, j]
                    for i, r in enumerate(rows)
                    if left_f[i, j]
                },
            )
            rp = HoloPoly(
                space,
                {
                    c + (0,): right_f[j, i].conj()
                    for i, c in enumerate(cols)
                    if right_f[j, i]
                },
            )
            lefts.append(lp)
            rights.append(rp)
        blocks.append(
            BlockCertificate(mu, nu, gamma, delta, rank, tuple(lefts), tuple(rights))
        )

    # every certificate must re-expand to the input
    rebuilt = HermPoly(space, {})
    for blk in blocks:
        wg = space.monomial((0,) * (space.n - 1) + (blk.gamma,))
        wd = space.monomial((0,) * (space.n - 1) + (blk.delta,))
        for lp, rp in zip(blk.left, blk.right):
            rebuilt = rebuilt + HermPoly.holo_times_antiholo(lp * wg, rp * wd)
    assert rebuilt == a

    member = max_rank <= k
    note = (
        f"every block has rank at most {k}"
        if member
        else f"block {offending} has rank {max_rank} > {k}"
    )
    return MembershipReport(k, member, max_rank, tuple(blocks), offending, note)


def paired_block_sum(
    ps: Sequence[HoloPoly], qs: Sequence[HoloPoly], gamma: int = 0, delta: int = 0
) -> HermPoly:
    """sum_j p_j * conj(q_j) * w^gamma wbar^delta, plus its conjugate."""
    if len(ps) != len(qs):
        raise ValueError("family lengths differ")
    if not ps:
        raise ValueError("families must be nonempty")
    space = ps[0].space
    wg = space.monomial((0,) * (space.n - 1) + (gamma,))
    wd = space.monomial((0,) * (space.n - 1) + (delta,))
    half = HermPoly(space, {})
    for p, q in zip(ps, qs):
        half = half + HermPoly.holo_times_antiholo(p * wg, q * wd)
    return half + half.conj()


# -- exact solve of L(p, q) = A ---------------------------------------


@dataclass(frozen=True)
class KernelReport:
    """Full affine solution space of L(p, q) = A in weighted degree s.

    Unknowns are the real and imaginary parts of the coefficients of the
    n - 1 components of p (weight s - 2 .. stored as weight s - 1 keys)
    and of q (weight s keys).  ``expectation`` states what the rigidity
    theorem predicts when it applies; ``matches_expectation`` compares,
    and is never used to shortcut the solve.
    """

    n: int
    ell: int
    s: int
    unknown_count: int
    equation_count: int
    consistent: bool
    particular: Optional[Tuple[Family, HoloPoly]]
    kernel_dimension: int
    kernel_basis: Tuple[Tuple[Family, HoloPoly], ...]
    expectation: Optional[str]
    matches_expectation: Optional[bool]
    note: str


def _chart_weight(key: Tuple[int, ...], nz: int) -> int:
    return sum(key[: 2 * nz]) + 2 * key[-1]


def cm_kernel_solve(
    n: int, ell: int, s: int, a: Optional[HermPoly] = None
) -> KernelReport:
    """Solve L(p, q) = A exactly for weighted-homogeneous (p, q)."""
    return cm_kernel_solve_many(n, ell, s, [a])[0]


def cm_kernel_solve_many(
    n: int, ell: int, s: int, rhss: Sequence[Optional[HermPoly]]
) -> List[KernelReport]:
    """Solve L(p, q) = A for several right-hand sides with one elimination."""
    if s < 2:
        raise ValueError("weighted degree must be at least 2")
    if not rhss:
        raise ValueError("at least one right-hand side is required")
    quadric = Hyperquadric.standard(n, ell)
    space = quadric.space
    nz = space.nz

    p_keys = space.monomials_of_weight(s - 1)
    q_keys = space.monomials_of_weight(s)
    slots: List[Tuple[int, ExpKey]] = [(c, key) for c in range(nz) for key in p_keys]
    slots += [(-1, key) for key in q_keys]
    ncols = 2 * len(slots)

    zero_fam = tuple(HoloPoly(space, {}) for _ in range(nz))
    zero_q = HoloPoly(space, {})

    # chart images of each coefficient basis element; the operator is
    # only R-linear, so real and imaginary unknowns get separate columns
    images: List[Tuple[ChartPoly, ChartPoly]] = []
    for c, key in slots:
        pair = []
        for unit in (GaussianRational(1), I):
            mono = HoloPoly(space, {key: unit})
            if c < 0:
                pair.append(linearized_operator(quadric, zero_fam, mono))
            else:
                fam = list(zero_fam)
                fam[c] = mono
                pair.append(linearized_operator(quadric, tuple(fam), zero_q))
        images.append((pair[0], pair[1]))

    rhs_charts: List[ChartPoly] = []
    for a in rhss:
        if a is None:
            rhs_charts.append(ChartPoly(space, {}))
            continue
        if a.space != space:
            raise ValueError("right-hand side lives in the wrong variable space")
        for key in a.terms:
            if a.weight_of_key(key) != s:
                raise ValueError(
                    f"right-hand side must be weighted homogeneous of degree {s}"
                )
        rhs_charts.append(a.chart_restrict(chart_q(space, quadric.signs)))

    # every chart monomial of weighted degree s gets an equation
    chart_keys = []
    for m in range(s // 2 + 1):
        for da in range(s - 2 * m + 1):
            db = s - 2 * m - da
            for alpha in space.z_monomials_of_degree(da):
                for beta in space.z_monomials_of_degree(db):
                    chart_keys.append(alpha[:-1] + beta[:-1] + (m,))
    chart_keys.sort()
    seen = {key for pair in images for img in pair for key in img.terms}
    seen |= {key for ch in rhs_charts for key in ch.terms}
    for key in seen:
        if _chart_weight(key, nz) != s:
            raise AssertionError("operator left the expected weighted degree")
    assert seen <= set(chart_keys)

    system = _build_system(ncols, chart_keys, images, rhs_charts)
    system.reduce()

    def vector_to_pq(vec: Sequence[Fraction]) -> Tuple[Family, HoloPoly]:
        comps = [dict() for _ in range(nz)]
        q_terms: Dict[ExpKey, GaussianRational] = {}
        for idx, (c, key) in enumerate(slots):
            val = GaussianRational(vec[2 * idx], vec[2 * idx + 1])
            if not val:
                continue
            if c < 0:
                q_terms[key] = val
            else:
                comps[c][key] = val
        return (
            tuple(HoloPoly(space, t) for t in comps),
            HoloPoly(space, q_terms),
        )

    kernel_vectors = system.kernel_basis()
    kernel_pq = tuple(vector_to_pq(v) for v in kernel_vectors)
    for fam, qq in kernel_pq:
        assert linearized_operator(quadric, fam, qq).is_zero()

    reports = []
    for t, a in enumerate(rhss):
        ok = system.consistent(t)
        particular = None
        if ok:
            sol = system.particular_solution(t)
            particular = vector_to_pq(sol)
            fam, qq = particular
            assert linearized_operator(quadric, fam, qq) == rhs_charts[t]
        expectation = None
        matches = None
        if s >= 5:
            if a is None or a.is_zero():
                expectation = "zero datum in the rigid range: only the trivial solution"
                matches = ok and system.kernel_dimension == 0
            else:
                membership = None
                try:
                    membership = block_rank_membership(a, n - 2)
                except ValueError:
                    membership = None
                if membership is not None and membership.member:
                    expectation = (
                        "nonzero datum of block rank <= n - 2 in the rigid range: "
                        "no solution"
                    )
                    matches = not ok
        note = "solved exactly" if ok else "inconsistent system: no (p, q) maps onto the datum"
        reports.append(
            KernelReport(
                n, ell, s, ncols, len(chart_keys), ok, particular,
                system.kernel_dimension, kernel_pq, expectation, matches, note,
            )
        )
    return reports


def _build_system(
    ncols: int,
    chart_keys: Sequence[Tuple[int, ...]],
    images: Sequence[Tuple[ChartPoly, ChartPoly]],
    rhs_charts: Sequence[ChartPoly],
) -> SparseRealSystem:
    system = SparseRealSystem(ncols, nrhs=len(rhs_charts))
    for key in chart_keys:
        row_re: Dict[int, Fraction] = {}
        row_im: Dict[int, Fraction] = {}
        for col, (img_re, img_im) in enumerate(images):
            for off, img in ((0, img_re), (1, img_im)):
                coeff = img.terms.get(key)
                if coeff is None:
                    continue
                if coeff.re:
                    row_re[2 * col + off] = coeff.re
                if coeff.im:
                    row_im[2 * col + off] = coeff.im
        system.add_equation(row_re, [ch.terms.get(key, ZERO).re for ch in rhs_charts])
        system.add_equation(row_im, [ch.terms.get(key, ZERO).im for ch in rhs_charts])
    return system
