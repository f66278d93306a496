"""Exact matrices over the Gaussian rationals and the sparse real solver."""

import random
from fractions import Fraction

import pytest

from quadricmaps.linalg import Matrix, SparseRealSystem, rank_of_dict_rows
from quadricmaps.scalars import GaussianRational, I, ONE, ZERO


def gr(a, b=0):
    return GaussianRational(Fraction(a), Fraction(b))


def random_matrix(rng, m, n):
    return Matrix(
        [[gr(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(n)] for _ in range(m)]
    )


def test_constructors_and_indexing():
    m = Matrix([[1, I], [0, gr(2, -1)]])
    assert m.shape == (2, 2)
    assert m[0, 1] == I
    assert m.row(1) == (ZERO, gr(2, -1))
    assert m.col(0) == (ONE, ZERO)
    assert Matrix.identity(3)[2, 2] == ONE
    assert Matrix.zeros(2, 3).shape == (2, 3)
    assert Matrix.zeros(2, 3).is_zero()
    assert Matrix.diagonal([1, -1])[1, 1] == gr(-1)
    with pytest.raises(ValueError):
        Matrix([[1, 2], [3]])


def test_arithmetic():
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix([[0, 1], [1, 0]])
    assert a + b - b == a
    assert a.scale(2) == a + a
    assert a * b == Matrix([[2, 1], [4, 3]])
    assert a * Matrix.identity(2) == a
    assert a.vec_mul([1, 1]) == (gr(3), gr(7))


def test_adjoints():
    m = Matrix([[I, 1], [0, gr(1, 1)]])
    assert m.transpose() == Matrix([[I, 0], [1, gr(1, 1)]])
    assert m.conj() == Matrix([[-I, 1], [0, gr(1, -1)]])
    assert m.conj_transpose() == m.transpose().conj()


def test_rref_and_rank():
    m = Matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    r, pivots = m.rref()
    assert pivots == (0, 1)
    assert m.rank() == 2
    assert r[0, 0] == ONE and r[1, 1] == ONE
    # third row is eliminated completely
    assert all(not r[2, j] for j in range(3))


def test_kernel_basis():
    rng = random.Random(17)
    for _ in range(20):
        m = random_matrix(rng, 3, 5)
        basis = m.kernel_basis()
        assert len(basis) == 5 - m.rank()
        for v in basis:
            assert all(not x for x in m.vec_mul(v))


def test_solve():
    a = Matrix([[1, 1], [1, -1]])
    x = a.solve([gr(3), gr(1)])
    assert x == (gr(2), gr(1))
    singular = Matrix([[1, 1], [2, 2]])
    assert singular.solve([1, 3]) is None
    assert singular.solve([1, 2]) is not None
    with pytest.raises(ValueError):
        a.solve([1, 2, 3])


def test_inverse():
    rng = random.Random(23)
    found = 0
    while found < 10:
        m = random_matrix(rng, 3, 3)
        if m.rank() < 3:
            continue
        found += 1
        assert m * m.inverse() == Matrix.identity(3)
        assert m.inverse() * m == Matrix.identity(3)
    with pytest.raises(ValueError):
        Matrix([[1, 1], [1, 1]]).inverse()
    with pytest.raises(ValueError):
        Matrix([[1, 2, 3]]).inverse()


def test_rank_factorization():
    rng = random.Random(5)
    for _ in range(20):
        m = random_matrix(rng, 4, 3)
        p, q = m.rank_factorization()
        r = m.rank()
        assert p.shape == (4, r) and q.shape == (r, 3)
        assert p * q == m


def test_rank_of_dict_rows():
    rows = [{"a": ONE, "b": gr(2)}, {"a": gr(2), "b": gr(4)}, {"c": I}]
    assert rank_of_dict_rows(rows) == 2
    assert rank_of_dict_rows([]) == 0
    # restricting to columns a, b drops the third row to zero and leaves
    # two proportional rows
    assert rank_of_dict_rows(rows, keys=["a", "b"]) == 1


def test_sparse_system_known():
    # x + y = 3, x - y = 1, with a second rhs (0, 2)
    sys = SparseRealSystem(2, nrhs=2)
    sys.add_equation({0: Fraction(1), 1: Fraction(1)}, [Fraction(3), Fraction(0)])
    sys.add_equation({0: Fraction(1), 1: Fraction(-1)}, [Fraction(1), Fraction(2)])
    sys.reduce()
    assert sys.rank == 2
    assert sys.kernel_dimension == 0
    assert sys.consistent(0) and sys.consistent(1)
    assert sys.particular_solution(0) == [Fraction(2), Fraction(1)]
    assert sys.particular_solution(1) == [Fraction(1), Fraction(-1)]


def test_sparse_system_inconsistent_and_kernel():
    sys = SparseRealSystem(3)
    sys.add_equation({0: Fraction(1), 1: Fraction(1)}, [Fraction(1)])
    sys.add_equation({0: Fraction(2), 1: Fraction(2)}, [Fraction(3)])
    sys.reduce()
    assert not sys.consistent()
    assert sys.particular_solution() is None
    hom = SparseRealSystem(3)
    hom.add_equation({0: Fraction(1), 2: Fraction(-1)}, [Fraction(0)])
    hom.reduce()
    assert hom.kernel_dimension == 2
    for v in hom.kernel_basis():
        assert v[0] == v[2]


def test_sparse_matches_dense():
    rng = random.Random(31)
    for _ in range(15):
        m, n = 4, 3
        dense = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(m)]
        sol = [Fraction(rng.randint(-2, 2)) for _ in range(n)]
        rhs = [sum(r[j] * sol[j] for j in range(n)) for r in dense]
        sys = SparseRealSystem(n)
        for r, b in zip(dense, rhs):
            sys.add_equation({j: c for j, c in enumerate(r) if c}, [b])
        sys.reduce()
        assert sys.consistent()
        got = sys.particular_solution()
        for r, b in zip(dense, rhs):
            assert sum(c * x for c, x in zip(r, got)) == b
        dm = Matrix([[gr(c) for c in r] for r in dense])
        assert sys.rank == dm.rank()
