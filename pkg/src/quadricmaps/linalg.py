"""Exact linear algebra over the Gaussian rationals.

Dense matrices (tuples of tuples of GaussianRational) with rank, solve,
inverse, kernel and rank factorization, plus a sparse Gaussian eliminator
over Fraction for the large real systems of the kernel solver.  Pivoting
is positional (first nonzero), which is always valid in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .scalars import GaussianRational, ONE, ZERO, ScalarLike

Row = Tuple[GaussianRational, ...]


@dataclass(frozen=True, slots=True, eq=False)
class Matrix:
    rows: Tuple[Row, ...]

    def __init__(self, rows: Iterable[Iterable[ScalarLike]]) -> None:
        data = tuple(
            tuple(GaussianRational.of(x) for x in row) for row in rows
        )
        if data and any(len(r) != len(data[0]) for r in data):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", data)

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(
            [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zeros(m: int, n: int) -> "Matrix":
        return Matrix([[ZERO] * n for _ in range(m)])

    @staticmethod
    def diagonal(entries: Sequence[ScalarLike]) -> "Matrix":
        n = len(entries)
        return Matrix(
            [
                [GaussianRational.of(entries[i]) if i == j else ZERO for j in range(n)]
                for i in range(n)
            ]
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij: Tuple[int, int]) -> GaussianRational:
        return self.rows[ij[0]][ij[1]]

    def row(self, i: int) -> Row:
        return self.rows[i]

    def col(self, j: int) -> Row:
        return tuple(r[j] for r in self.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def scale(self, c: ScalarLike) -> "Matrix":
        c = GaussianRational.of(c)
        return Matrix([[x * c for x in r] for r in self.rows])

    def __mul__(self, other: "Matrix") -> "Matrix":
        m, k = self.shape
        k2, n = other.shape
        if k != k2:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.col(j) for j in range(n)]
        return Matrix(
            [
                [sum((a * b for a, b in zip(row, col)), ZERO) for col in cols]
                for row in self.rows
            ]
        )

    def transpose(self) -> "Matrix":
        m, n = self.shape
        return Matrix([[self.rows[i][j] for i in range(m)] for j in range(n)])

    def conj(self) -> "Matrix":
        return Matrix([[x.conj() for x in r] for r in self.rows])

    def conj_transpose(self) -> "Matrix":
        return self.conj().transpose()

    def vec_mul(self, v: Sequence[ScalarLike]) -> Tuple[GaussianRational, ...]:
        """Matrix times column vector."""
        vv = [GaussianRational.of(x) for x in v]
        return tuple(sum((a * b for a, b in zip(r, vv)), ZERO) for r in self.rows)

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    # -- elimination --------------------------------------------------

    def rref(self) -> Tuple["Matrix", Tuple[int, ...]]:
        """Reduced row echelon form and pivot column indices."""
        m, n = self.shape
        rows = [list(r) for r in self.rows]
        pivots: List[int] = []
        lead = 0
        for col in range(n):
            if lead >= m:
                break
            pivot = next((i for i in range(lead, m) if rows[i][col]), None)
            if pivot is None:
                continue
            rows[lead], rows[pivot] = rows[pivot], rows[lead]
            inv = ONE / rows[lead][col]
            rows[lead] = [x * inv for x in rows[lead]]
            for i in range(m):
                if i != lead and rows[i][col]:
                    f = rows[i][col]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[lead])]
            pivots.append(col)
            lead += 1
        return Matrix(rows), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> List[Tuple[GaussianRational, ...]]:
        """Basis of the right null space."""
        m, n = self.shape
        r, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(n):
            if free in pivot_set:
                continue
            v = [ZERO] * n
            v[free] = ONE
            for i, p in enumerate(pivots):
                v[p] = -r[i, free]
            basis.append(tuple(v))
        return basis

    def solve(self, b: Sequence[ScalarLike]) -> Optional[Tuple[GaussianRational, ...]]:
        """One solution of A x = b, or None if inconsistent."""
        m, n = self.shape
        bb = [GaussianRational.of(x) for x in b]
        if len(bb) != m:
            raise ValueError("right-hand side length mismatch")
        aug = Matrix([list(r) + [bb[i]] for i, r in enumerate(self.rows)])
        r, pivots = aug.rref()
        if n in pivots:
            return None
        x = [ZERO] * n
        for i, p in enumerate(pivots):
            x[p] = r[i, n]
        return tuple(x)

    def inverse(self) -> "Matrix":
        m, n = self.shape
        if m != n:
            raise ValueError("inverse of a nonsquare matrix")
        aug = Matrix(
            [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(self.rows)]
        )
        r, pivots = aug.rref()
        if tuple(pivots) != tuple(range(n)):
            raise ValueError("matrix is singular")
        return Matrix([[r[i, n + j] for j in range(n)] for i in range(n)])

    def rank_factorization(self) -> Tuple["Matrix", "Matrix"]:
        """M = P * Q with P of shape (m, r) and Q of shape (r, n), r = rank.

        Q is the nonzero part of the RREF; P holds the pivot columns of M.
        """
        m, n = self.shape
        r, pivots = self.rref()
        k = len(pivots)
        q = Matrix([[r[i, j] for j in range(n)] for i in range(k)])
        p = Matrix([[self.rows[i][c] for c in pivots] for i in range(m)])
        return p, q

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)


def rank_of_dict_rows(rows: Sequence[Dict], keys: Optional[Sequence] = None) -> int:
    """Rank of sparse rows given as {key: GaussianRational} dictionaries."""
    if keys is None:
        all_keys = sorted({k for row in rows for k in row})
    else:
        all_keys = list(keys)
    dense = [[row.get(k, ZERO) for k in all_keys] for row in rows]
    if not dense:
        return 0
    return Matrix(dense).rank()


# -- sparse exact elimination over Fraction ----------------------------


class SparseRealSystem:
    """Equations sum_j c_j x_j = b over Fraction, built incrementally.

    Supports several right-hand sides at once; ``reduce`` runs forward
    elimination once, after which consistency, a particular solution and
    the kernel dimension are available per right-hand side.
    """

    def __init__(self, ncols: int, nrhs: int = 1) -> None:
        self.ncols = ncols
        self.nrhs = nrhs
        self.equations: List[Tuple[Dict[int, Fraction], List[Fraction]]] = []
        self._reduced = False
        self._pivot_rows: Dict[int, Tuple[Dict[int, Fraction], List[Fraction]]] = {}
        self._inconsistent: List[bool] = [False] * nrhs

    def add_equation(self, coeffs: Dict[int, Fraction], rhs: Sequence[Fraction]) -> None:
        if self._reduced:
            raise RuntimeError("system already reduced")
        clean = {j: Fraction(c) for j, c in coeffs.items() if c}
        self.equations.append((clean, [Fraction(x) for x in rhs]))

    def reduce(self) -> None:
        if self._reduced:
            return
        pivot_rows = self._pivot_rows
        for coeffs, rhs in self.equations:
            row, vec = dict(coeffs), list(rhs)
            while row:
                col = min(row)
                if col in pivot_rows:
                    prow, pvec = pivot_rows[col]
                    f = row[col]
                    for j, c in prow.items():
                        v = row.get(j, Fraction(0)) - f * c
                        if v:
                            row[j] = v
                        else:
                            row.pop(j, None)
                    for t in range(self.nrhs):
                        vec[t] -= f * pvec[t]
                else:
                    inv = 1 / row[col]
                    row = {j: c * inv for j, c in row.items()}
                    vec = [x * inv for x in vec]
                    pivot_rows[col] = (row, vec)
                    break
            else:
                for t in range(self.nrhs):
                    if vec[t]:
                        self._inconsistent[t] = True
        self._reduced = True

    @property
    def rank(self) -> int:
        self.reduce()
        return len(self._pivot_rows)

    @property
    def kernel_dimension(self) -> int:
        self.reduce()
        return self.ncols - len(self._pivot_rows)

    def consistent(self, t: int = 0) -> bool:
        self.reduce()
        return not self._inconsistent[t]

    def particular_solution(self, t: int = 0) -> Optional[List[Fraction]]:
        """A solution with all free variables set to zero, or None."""
        self.reduce()
        if self._inconsistent[t]:
            return None
        x = [Fraction(0)] * self.ncols
        # Back substitution in decreasing pivot order.
        for col in sorted(self._pivot_rows, reverse=True):
            row, vec = self._pivot_rows[col]
            acc = vec[t]
            for j, c in row.items():
                if j != col:
                    acc -= c * x[j]
            x[col] = acc
        return x

    def kernel_basis(self) -> List[List[Fraction]]:
        self.reduce()
        basis = []
        pivot_cols = set(self._pivot_rows)
        for free in range(self.ncols):
            if free in pivot_cols:
                continue
            x = [Fraction(0)] * self.ncols
            x[free] = Fraction(1)
            for col in sorted(self._pivot_rows, reverse=True):
                row, _ = self._pivot_rows[col]
                acc = Fraction(0)
                for j, c in row.items():
                    if j != col:
                        acc -= c * x[j]
                x[col] = acc
            basis.append(x)
        return basis
