"""GF(2) matrix primitives."""

from __future__ import annotations

import random

import pytest

from intervalcat import F2Matrix


def test_rank_examples():
    assert F2Matrix.identity(3).rank() == 3
    assert F2Matrix.zeros(2, 4).rank() == 0
    assert F2Matrix.from_dense([[1, 1], [1, 1]]).rank() == 1


def test_shapes_validated():
    with pytest.raises(ValueError):
        F2Matrix(2, 2, (1, 4))  # 4 needs a third column
    with pytest.raises(ValueError):
        F2Matrix.from_dense([[1, 0], [1]])


def test_matmul():
    a = F2Matrix.from_dense([[1, 1, 0], [0, 1, 1]])
    b = F2Matrix.from_dense([[1, 0], [1, 1], [0, 1]])
    assert (a @ b).to_dense() == [[0, 1], [1, 0]]
    with pytest.raises(ValueError):
        b @ b


def test_matmul_associative_random():
    rng = random.Random(7)
    for _ in range(50):
        m, k, l, p = (rng.randint(0, 5) for _ in range(4))
        a = F2Matrix(m, k, [rng.getrandbits(k) for _ in range(m)])
        b = F2Matrix(k, l, [rng.getrandbits(l) for _ in range(k)])
        c = F2Matrix(l, p, [rng.getrandbits(p) for _ in range(l)])
        assert (a @ b) @ c == a @ (b @ c)


def test_kernel_basis_spans_nullspace():
    rng = random.Random(11)
    for _ in range(100):
        m, k = rng.randint(0, 6), rng.randint(0, 6)
        a = F2Matrix(m, k, [rng.getrandbits(k) for _ in range(m)])
        ns = a.kernel_basis()
        assert ns.ncols == k - a.rank()
        prod = a @ ns
        assert all(r == 0 for r in prod.rows)
        assert ns.rank() == ns.ncols


def test_left_kernel_and_column_space():
    rng = random.Random(13)
    for _ in range(100):
        m, k = rng.randint(0, 6), rng.randint(0, 6)
        a = F2Matrix(m, k, [rng.getrandbits(k) for _ in range(m)])
        lk = a.left_kernel_basis()
        assert lk.nrows == m - a.rank()
        assert all(r == 0 for r in (lk @ a).rows)
        cs = a.column_space()
        assert cs.ncols == a.rank()
        assert cs.rank() == a.rank()


def test_solve_roundtrip():
    rng = random.Random(17)
    for _ in range(100):
        m, k, q = rng.randint(0, 5), rng.randint(0, 5), rng.randint(0, 4)
        a = F2Matrix(m, k, [rng.getrandbits(k) for _ in range(m)])
        x = F2Matrix(k, q, [rng.getrandbits(q) for _ in range(k)])
        rhs = a @ x
        got = a.solve(rhs)
        assert a @ got == rhs


def test_solve_inconsistent():
    a = F2Matrix.zeros(2, 2)
    rhs = F2Matrix.from_dense([[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        a.solve(rhs)


def test_mat_vec_matches_matmul():
    rng = random.Random(19)
    for _ in range(50):
        m, k = rng.randint(1, 6), rng.randint(1, 6)
        a = F2Matrix(m, k, [rng.getrandbits(k) for _ in range(m)])
        v = rng.getrandbits(k)
        col = F2Matrix(k, 1, [(v >> i) & 1 for i in range(k)])
        assert a.mat_vec(v) == sum(r << i for i, r in enumerate((a @ col).rows))


def test_transpose_involution():
    a = F2Matrix.from_dense([[1, 0, 1], [0, 1, 1]])
    assert a.transpose().transpose() == a
    assert a.transpose().shape == (3, 2)
