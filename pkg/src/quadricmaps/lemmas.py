"""Constructive checks of the pairing and signed-squares lemmas.

The common object is a polarized pairing

    S(z, xi) = sum_i a_i(z) * conj(b_i)(xi)

for finite families of holomorphic polynomials in z alone, together with
the polarized source form Q(z, xi) = sum_j delta_j z_j xi_j.  Everything
here is decided exactly: divisibility of S by Q comes with a quotient
that re-multiplies to S, and non-divisibility comes with a point of
{Q = 0} where S does not vanish.

The checkers report three-valued verdicts.  ``consistent`` is True when
the lemma's conclusion holds on the instance, False when the instance
would contradict the lemma (a falsification package, never expected),
and None when the lemma makes no claim because a hypothesis or the
divisibility premise fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .hermitian import BiholoPoly, HermPoly, PairKey, polarize
from .linalg import Matrix
from .polynomials import HoloPoly, VariableSpace
from .quadrics import hermitian_q
from .scalars import I, ZERO, GaussianRational

Point = Tuple[GaussianRational, ...]
Family = Tuple[HoloPoly, ...]


# -- instance plumbing ------------------------------------------------


def _family_space(*families: Sequence[HoloPoly]) -> VariableSpace:
    space = None
    for fam in families:
        for p in fam:
            if space is None:
                space = p.space
            elif p.space != space:
                raise ValueError("family members live in different variable spaces")
    if space is None:
        raise ValueError("at least one family member is required")
    return space


def _check_z_only(p: HoloPoly, label: str) -> None:
    for k in p.terms:
        if k[-1]:
            raise ValueError(f"{label} must be a polynomial in z alone (no w)")


def pad_families(a: Sequence[HoloPoly], b: Sequence[HoloPoly]) -> Tuple[Family, Family]:
    """Equalize family lengths by appending zero polynomials."""
    space = _family_space(a, b)
    zero = HoloPoly(space, {})
    k = max(len(a), len(b))
    aa = tuple(a) + (zero,) * (k - len(a))
    bb = tuple(b) + (zero,) * (k - len(b))
    return aa, bb


def pairing_form(a: Sequence[HoloPoly], b: Sequence[HoloPoly]) -> BiholoPoly:
    """sum_i a_i(z) * conj(b_i)(xi) with (z, xi) independent tuples."""
    aa, bb = pad_families(a, b)
    space = aa[0].space
    for i, (p, q) in enumerate(zip(aa, bb), start=1):
        _check_z_only(p, f"a_{i}")
        _check_z_only(q, f"b_{i}")
    s = BiholoPoly(space, {})
    for p, q in zip(aa, bb):
        s = s + BiholoPoly.holo_times_antiholo(p, q)
    return s


def polarized_form(space: VariableSpace, ell: int) -> BiholoPoly:
    """Q(z, xi) = -z_1 xi_1 - .. - z_ell xi_ell + .. + z_{n-1} xi_{n-1}."""
    nz = space.nz
    if not 0 <= ell <= nz:
        raise ValueError("sign count out of range")
    signs = [-1] * ell + [1] * (nz - ell)
    return polarize(hermitian_q(space, signs))


# -- certified division by the source form ----------------------------


@dataclass(frozen=True)
class DivisionOutcome:
    """Certified result of dividing a pairing by the polarized form.

    Either ``quotient * Q == s`` exactly, or the witness pair lies on
    {Q = 0} with ``s(witness) == witness_value != 0``.
    """

    divisible: bool
    quotient: Optional[BiholoPoly]
    witness_z: Optional[Point]
    witness_xi: Optional[Point]
    witness_value: Optional[GaussianRational]


def _subst_slot(p: BiholoPoly, slot: int, value: GaussianRational) -> BiholoPoly:
    table: Dict[PairKey, GaussianRational] = {}
    for k, c in p.terms.items():
        e = k[slot]
        if e:
            if not value:
                continue
            c = c * value**e
        key = k[:slot] + (0,) + k[slot + 1 :]
        prev = table.get(key)
        table[key] = c if prev is None else prev + c
    return BiholoPoly(p.space, table)


def _candidates(d: int):
    yield GaussianRational.of(0)
    for t in range(1, d + 1):
        yield GaussianRational.of(t)
        yield GaussianRational.of(-t)


def _nonzero_biholo_point(p: BiholoPoly, slots: Sequence[int]) -> Dict[int, GaussianRational]:
    """Values for the given slots at which p is nonzero.

    p must involve no slots outside `slots`.  Sequential substitution:
    in each slot a nonzero polynomial of degree d has at most d roots,
    so one of d + 1 candidate values keeps the table nonzero.
    """
    if p.is_zero():
        raise ValueError("cannot find a nonzero point of the zero polynomial")
    cur = p
    vals: Dict[int, GaussianRational] = {}
    for slot in slots:
        d = max((k[slot] for k in cur.terms), default=0)
        for cand in _candidates(d):
            nxt = _subst_slot(cur, slot, cand)
            if not nxt.is_zero():
                vals[slot] = cand
                cur = nxt
                break
        else:  # pragma: no cover - impossible by the root bound
            raise AssertionError("candidate exhaustion in witness search")
    if any(k != (0,) * len(k) for k in cur.terms):
        raise ValueError("polynomial involves slots outside the search list")
    return vals


def divide_by_form(s: BiholoPoly, ell: int) -> DivisionOutcome:
    """Divide S(z, xi) by Q = sum_j delta_j z_j xi_j, with certificate.

    S must not involve w or its bar.  Pseudo-division in xi_1 by Q,
    whose xi_1-leading coefficient is delta_1 z_1, gives

        (delta_1 z_1)^d * S = Q * T + R,    R free of xi_1.

    R == 0 forces z_1^d | T (Q is primitive), and the quotient is exact.
    Otherwise R/(delta_1 z_1)^d equals S on {Q = 0, z_1 != 0}, so a
    nonzero point of z_1 * R solves for xi_1 and refutes divisibility.
    """
    space = s.space
    n = space.n
    nz = space.nz
    if nz < 1:
        raise ValueError("need at least one z variable")
    for k in s.terms:
        if k[n - 1] or k[2 * n - 1]:
            raise ValueError("pairing must not involve w")
    if s.is_zero():
        return DivisionOutcome(True, BiholoPoly(space, {}), None, None, None)
    q = polarized_form(space, ell)
    delta1 = -1 if ell >= 1 else 1

    if nz == 1:
        # Q = delta_1 z_1 xi_1 is a monomial; divisibility is key-wise.
        bad = next((k for k in s.terms if k[0] == 0 or k[n] == 0), None)
        if bad is None:
            table = {
                (k[0] - 1,) + k[1:n] + (k[n] - 1,) + k[n + 1 :]: c * delta1
                for k, c in s.terms.items()
            }
            a = BiholoPoly(space, table)
            assert a * q == s
            return DivisionOutcome(True, a, None, None, None)
        # kill one factor of Q, keep the offending term alive
        if bad[0] == 0:
            cur = _subst_slot(s, 0, ZERO)
            vals = _nonzero_biholo_point(cur, [n])
            wz: Point = (ZERO, ZERO)
            wxi: Point = (vals[n], ZERO)
        else:
            cur = _subst_slot(s, n, ZERO)
            vals = _nonzero_biholo_point(cur, [0])
            wz = (vals[0], ZERO)
            wxi = (ZERO, ZERO)
        val = s.evaluate(wz, wxi)
        assert not q.evaluate(wz, wxi) and val
        return DivisionOutcome(False, None, wz, wxi, val)

    d = max(k[n] for k in s.terms)
    lead_key = (1,) + (0,) * (2 * n - 1)
    lead = BiholoPoly(space, {lead_key: GaussianRational.of(delta1)})
    work = s
    quot = BiholoPoly(space, {})
    for g in range(d, 0, -1):
        block = BiholoPoly(
            space,
            {
                k[:n] + (0,) + k[n + 1 :]: c
                for k, c in work.terms.items()
                if k[n] == g
            },
        )
        shift = BiholoPoly(
            space,
            {k[:n] + (g - 1,) + k[n + 1 :]: c for k, c in block.terms.items()},
        )
        work = work * lead - q * shift
        quot = quot * lead + shift
    # invariant: lead^d * s == q * quot + work, and work is free of xi_1

    if work.is_zero():
        sign = GaussianRational.of(delta1**d)
        table = {}
        for k, c in quot.terms.items():
            assert k[0] >= d
            table[(k[0] - d,) + k[1:]] = c * sign
        a = BiholoPoly(space, table)
        assert a * q == s
        return DivisionOutcome(True, a, None, None, None)

    prod = BiholoPoly(space, {lead_key: GaussianRational.of(1)}) * work
    slots = list(range(nz)) + [n + j for j in range(1, nz)]
    vals = _nonzero_biholo_point(prod, slots)
    z_vals = [vals[j] for j in range(nz)]
    xi_rest = [vals[n + j] for j in range(1, nz)]
    signs = [-1] * ell + [1] * (nz - ell)
    rest = ZERO
    for j in range(1, nz):
        rest = rest + z_vals[j] * xi_rest[j - 1] * signs[j]
    xi1 = -rest / (z_vals[0] * delta1)
    wz = tuple(z_vals) + (ZERO,)
    wxi = (xi1,) + tuple(xi_rest) + (ZERO,)
    val = s.evaluate(wz, wxi)
    assert not q.evaluate(wz, wxi) and val
    return DivisionOutcome(False, None, wz, wxi, val)


# -- single-layer pairing check ---------------------------------------


@dataclass(frozen=True)
class PairingVerdict:
    """Rank-bounded pairing test on one layer.

    Claim being checked: if S = A * Q with at most n - 2 pairs, then
    A == 0 (equivalently S == 0).
    """

    k: int
    ell: int
    n: int
    hypotheses_met: bool
    division: DivisionOutcome
    quotient_vanishes: Optional[bool]
    consistent: Optional[bool]
    note: str


def pairing_divisibility_check(
    a: Sequence[HoloPoly], b: Sequence[HoloPoly], ell: int
) -> PairingVerdict:
    aa, bb = pad_families(a, b)
    k = len(aa)
    s = pairing_form(aa, bb)
    space = aa[0].space
    n = space.n
    out = divide_by_form(s, ell)
    hyp = 1 <= k <= n - 2
    if not out.divisible:
        return PairingVerdict(
            k, ell, n, hyp, out, None, None,
            "pairing is not a multiple of the source form; witness attached",
        )
    qv = out.quotient.is_zero()
    if not hyp:
        return PairingVerdict(
            k, ell, n, False, out, qv, None,
            f"rank bound 1 <= k <= n - 2 fails (k = {k}, n = {n}); no claim",
        )
    if qv:
        note = "factor vanishes, as the rank bound forces"
    else:
        note = "counterexample: nonzero factor under the rank bound"
    return PairingVerdict(k, ell, n, True, out, qv, qv, note)


# -- layered pairing check --------------------------------------------


@dataclass(frozen=True)
class LayeredVerdict:
    """Layered pairing test: sum_j S_j * Q^j = A * Q^{r+1} forces every
    layer sum S_j and the factor A to vanish, provided each layer obeys
    the rank bound."""

    ks: Tuple[int, ...]
    ell: int
    n: int
    hypotheses_met: bool
    divisible: bool
    failed_power: Optional[int]
    division: DivisionOutcome
    layer_sums_vanish: Optional[Tuple[bool, ...]]
    quotient_vanishes: Optional[bool]
    consistent: Optional[bool]
    note: str


def layered_pairing_check(
    layers: Sequence[Tuple[Sequence[HoloPoly], Sequence[HoloPoly]]], ell: int
) -> LayeredVerdict:
    if not layers:
        raise ValueError("at least one layer is required")
    padded = [pad_families(a, b) for a, b in layers]
    ks = tuple(len(aa) for aa, _ in padded)
    space = padded[0][0][0].space
    n = space.n
    q = polarized_form(space, ell)
    sums = [pairing_form(aa, bb) for aa, bb in padded]
    total = BiholoPoly(space, {})
    power = BiholoPoly.constant(space, 1)
    for s_j in sums:
        total = total + s_j * power
        power = power * q
    hyp = all(1 <= k <= n - 2 for k in ks)

    cur = total
    out = DivisionOutcome(True, cur, None, None, None)
    for step in range(len(layers)):
        out = divide_by_form(cur, ell)
        if not out.divisible:
            return LayeredVerdict(
                ks, ell, n, hyp, False, step + 1, out, None, None, None,
                f"total pairing is not a multiple of Q^{step + 1}; witness attached",
            )
        cur = out.quotient
    vanish = tuple(s_j.is_zero() for s_j in sums)
    qv = cur.is_zero()
    if not hyp:
        return LayeredVerdict(
            ks, ell, n, False, True, None, out, vanish, qv, None,
            f"some layer breaks the rank bound 1 <= k_j <= n - 2 (k = {ks}); no claim",
        )
    ok = qv and all(vanish)
    note = (
        "every layer sum and the factor vanish"
        if ok
        else "counterexample: surviving layer under the rank bounds"
    )
    return LayeredVerdict(ks, ell, n, True, True, None, out, vanish, qv, ok, note)


# -- isometric decomposition of equal square sums ---------------------


@dataclass(frozen=True)
class IsometryWitness:
    """b = a * matrix with matrix * conj(matrix)^t = Id_k.

    Exact witnesses carry a rational matrix; otherwise ``approx`` holds
    a numerically completed matrix and ``residual`` bounds the defect.
    """

    exact: bool
    matrix: Optional[Matrix]
    approx: Optional[np.ndarray]
    residual: Optional[float]


@dataclass(frozen=True)
class DecompositionReport:
    """Outcome of decomposing sum |b_j|^2 = sum |a_i|^2 through an isometry."""

    identity_holds: bool
    witness_point: Optional[Point]
    witness_value: Optional[GaussianRational]
    isometry: Optional[IsometryWitness]
    note: str


def _herm_subst_var(h: HermPoly, j: int, value: GaussianRational) -> HermPoly:
    n = h.space.n
    vb = value.conj()
    table: Dict[PairKey, GaussianRational] = {}
    for k, c in h.terms.items():
        eh, ea = k[j], k[n + j]
        if eh:
            if not value:
                continue
            c = c * value**eh
        if ea:
            if not vb:
                continue
            c = c * vb**ea
        key = list(k)
        key[j] = 0
        key[n + j] = 0
        kk = tuple(key)
        prev = table.get(kk)
        table[kk] = c if prev is None else prev + c
    return HermPoly(h.space, table)


def _nonzero_herm_point(h: HermPoly) -> Point:
    """A point where the (nonzero) Hermitian table takes a nonzero value.

    Substituting z_j = x + i y turns the table into a polynomial of
    degree at most d = deg z_j + deg zbar_j in (x, y); a grid of side
    2 d + 1 must contain a point keeping it nonzero.
    """
    if h.is_zero():
        raise ValueError("cannot find a nonzero point of the zero polynomial")
    n = h.space.n
    cur = h
    vals: List[GaussianRational] = []
    for j in range(n):
        d = max((k[j] + k[n + j] for k in cur.terms), default=0)
        found = None
        for x in _candidates(d):
            for y in _candidates(d):
                v = x + y * I if y else x
                nxt = _herm_subst_var(cur, j, v)
                if not nxt.is_zero():
                    found = v
                    cur = nxt
                    break
            if found is not None:
                break
        assert found is not None, "grid exhaustion in witness search"
        vals.append(found)
    return tuple(vals)


def _coeff_matrix(fams: Sequence[HoloPoly], keys: Sequence) -> Matrix:
    return Matrix([[p.coefficient(k) for k in keys] for p in fams])


def isometry_decompose(
    a: Sequence[HoloPoly], b: Sequence[HoloPoly]
) -> DecompositionReport:
    """Decide sum |b_j|^2 == sum |a_i|^2 and produce b = a * U.

    When the identity fails, the report carries a point where the
    difference is nonzero.  When the a-coefficient matrix has full row
    rank, U is solved exactly and U * conj(U)^t = Id_k is checked
    exactly.  Rank-deficient families get the certified identity plus a
    least-squares completion, flagged non-exact.
    """
    if not a or not b:
        raise ValueError("families must be nonempty")
    space = _family_space(a, b)
    for i, p in enumerate(a, start=1):
        _check_z_only(p, f"a_{i}")
    for j, p in enumerate(b, start=1):
        _check_z_only(p, f"b_{j}")
    k, m = len(a), len(b)

    diff = HermPoly(space, {})
    for p in b:
        diff = diff + HermPoly.holo_times_antiholo(p, p)
    for p in a:
        diff = diff - HermPoly.holo_times_antiholo(p, p)
    if not diff.is_zero():
        pt = _nonzero_herm_point(diff)
        val = diff.evaluate(pt)
        assert val
        return DecompositionReport(
            False, pt, val, None,
            "square sums differ at the witness point",
        )

    keys = sorted({key for p in list(a) + list(b) for key in p.terms})
    ma = _coeff_matrix(a, keys)
    mb = _coeff_matrix(b, keys)
    if ma.rank() == k:
        mat = ma.transpose()  # columns index the a-family
        cols = []
        for j in range(m):
            sol = mat.solve(mb.row(j))
            assert sol is not None, "b outside the row span despite equal Grams"
            cols.append(sol)
        u = Matrix([[cols[j][i] for j in range(m)] for i in range(k)])
        # equal Grams force u * conj(u)^t = Id exactly
        gram = u * u.conj_transpose()
        assert gram == Matrix.identity(k)
        for j in range(m):
            rebuilt = HoloPoly(space, {})
            for i in range(k):
                rebuilt = rebuilt + a[i] * u[i, j]
            assert rebuilt == b[j]
        return DecompositionReport(
            True, None, None, IsometryWitness(True, u, None, None),
            "exact isometry from the full-rank coefficient solve",
        )

    # rank-deficient: the identity is still certified; complete numerically
    def to_np(mtx: Matrix) -> np.ndarray:
        rows, cols_ = mtx.shape
        out = np.zeros((rows, cols_), dtype=complex)
        for i in range(rows):
            for j in range(cols_):
                c = mtx[i, j]
                out[i, j] = float(c.re) + 1j * float(c.im)
        return out

    # A W = B with W W^+ = Id over column frames of the shared Gram
    a_np = to_np(ma).conj().T
    b_np = to_np(mb).conj().T
    c_np = a_np @ a_np.conj().T
    evals, evecs = np.linalg.eigh(c_np)
    tol = 1e-10 * max(1.0, float(evals.max(initial=0.0)))
    keep = evals > tol
    r = int(np.count_nonzero(keep))
    frame = evecs[:, keep]
    sigma = np.sqrt(evals[keep])
    va = a_np.conj().T @ frame / sigma
    vb = b_np.conj().T @ frame / sigma
    w = va @ vb.conj().T
    if r < k and m > r:
        null_a = np.linalg.svd(va, full_matrices=True)[0][:, r:]
        null_b = np.linalg.svd(vb, full_matrices=True)[0][:, r:]
        take = min(k - r, m - r)
        w = w + null_a[:, :take] @ null_b[:, :take].conj().T
    resid = float(
        np.linalg.norm(a_np @ w - b_np)
        + np.linalg.norm(w @ w.conj().T - np.eye(k))
    )
    return DecompositionReport(
        True, None, None, IsometryWitness(False, None, w.conj(), resid),
        "coefficient matrix is rank-deficient; completion is numerical",
    )


# -- signed squares over an indefinite form ---------------------------


@dataclass(frozen=True)
class SignedSquaresVerdict:
    """Signed-squares test: -sum |a|^2 + sum |b|^2 = A * |z|^2_ell with
    k < ell <= (n-1)/2 and k <= m forces A == 0 and b = a * U."""

    k: int
    m: int
    ell: int
    n: int
    hypotheses_met: bool
    division: DivisionOutcome
    quotient_vanishes: Optional[bool]
    decomposition: Optional[DecompositionReport]
    consistent: Optional[bool]
    note: str


def signed_squares_check(
    a: Sequence[HoloPoly], b: Sequence[HoloPoly], ell: int
) -> SignedSquaresVerdict:
    if not a or not b:
        raise ValueError("families must be nonempty")
    space = _family_space(a, b)
    n = space.n
    k, m = len(a), len(b)
    s = pairing_form(b, b) - pairing_form(a, a)
    out = divide_by_form(s, ell)
    hyp = k < ell and 2 * ell <= n - 1 and k <= m
    if not out.divisible:
        return SignedSquaresVerdict(
            k, m, ell, n, hyp, out, None, None, None,
            "signed difference is not a multiple of the source form; witness attached",
        )
    qv = out.quotient.is_zero()
    if not hyp:
        return SignedSquaresVerdict(
            k, m, ell, n, False, out, qv, None, None,
            f"hypotheses k < ell <= (n-1)/2, k <= m fail "
            f"(k = {k}, m = {m}, ell = {ell}, n = {n}); no claim",
        )
    if not qv:
        return SignedSquaresVerdict(
            k, m, ell, n, True, out, False, None, False,
            "counterexample: nonzero factor under the signature bounds",
        )
    dec = isometry_decompose(a, b)
    assert dec.identity_holds  # A == 0 collapses the identity to equal Grams
    ok = dec.isometry is not None
    return SignedSquaresVerdict(
        k, m, ell, n, True, out, True, dec, ok,
        "factor vanishes and the isometric decomposition follows",
    )
