"""CSR storage invariants and kernels, checked against dense numpy."""

import random

import numpy as np
import pytest

from magraph import ShapeMismatchError, SparseMatrix, TooLargeForDenseError


def random_sparse(rng, rows, cols, density=0.3):
    entries = [
        (i, j, round(rng.uniform(-5, 5), 3))
        for i in range(rows)
        for j in range(cols)
        if rng.random() < density
    ]
    return SparseMatrix.from_entries(rows, cols, entries)


def canonical(matrix):
    indptr, indices = matrix.indptr, matrix.indices
    assert indptr[0] == 0 and indptr[-1] == matrix.nnz
    assert all(indptr[i] <= indptr[i + 1] for i in range(matrix.rows))
    for i in range(matrix.rows):
        row = indices[indptr[i] : indptr[i + 1]]
        assert all(row[k] < row[k + 1] for k in range(len(row) - 1))
    assert not np.any(matrix.values == 0.0)


def test_duplicates_summed_and_sorted():
    m = SparseMatrix.from_entries(2, 3, [(0, 2, 1.0), (0, 0, 2.0), (0, 2, 3.0)])
    canonical(m)
    assert m.entry(0, 2) == 4.0
    assert m.entry(0, 0) == 2.0
    assert m.nnz == 2


def test_explicit_zeros_dropped():
    m = SparseMatrix.from_entries(2, 2, [(0, 1, 0.0), (1, 0, 1.0), (0, 0, 1.0), (0, 0, -1.0)])
    canonical(m)
    assert m.nnz == 1


def test_builders():
    eye = SparseMatrix.identity(3)
    assert np.array_equal(eye.to_dense(), np.eye(3))
    z = SparseMatrix.zeros(2, 5)
    assert z.nnz == 0 and z.shape == (2, 5)
    d = SparseMatrix.from_diagonal([1.0, 0.0, 2.0])
    assert np.array_equal(d.to_dense(), np.diag([1.0, 0.0, 2.0]))
    assert d.nnz == 2


def test_kernels_match_dense():
    rng = random.Random(5)
    for _ in range(25):
        a = random_sparse(rng, rng.randint(1, 8), rng.randint(1, 8))
        b = random_sparse(rng, a.cols, rng.randint(1, 8))
        canonical(a)
        ad, bd = a.to_dense(), b.to_dense()
        assert np.allclose((a @ b).to_dense(), ad @ bd)
        assert np.array_equal(a.transpose().to_dense(), ad.T)
        x = np.array([rng.uniform(-1, 1) for _ in range(a.cols)])
        assert np.allclose(a.matvec(x), ad @ x)
        c = random_sparse(rng, a.rows, a.cols)
        assert np.allclose((a + c).to_dense(), ad + c.to_dense())
        assert np.allclose(a.scale(2.5).to_dense(), 2.5 * ad)
        canonical(a @ b)
        canonical(a + c)


def test_shape_mismatch():
    a = SparseMatrix.zeros(2, 3)
    b = SparseMatrix.zeros(2, 3)
    with pytest.raises(ShapeMismatchError):
        a @ b
    with pytest.raises(ShapeMismatchError):
        a + SparseMatrix.zeros(3, 2)
    with pytest.raises(ShapeMismatchError):
        a.matvec(np.ones(2))


def test_pattern_threshold():
    m = SparseMatrix.from_entries(1, 3, [(0, 0, 1e-13), (0, 1, -2.0), (0, 2, 1e-11)])
    p = m.pattern()
    assert p.entry(0, 0) == 0.0
    assert p.entry(0, 1) == 1.0
    assert p.entry(0, 2) == 1.0
    canonical(p)


def test_equality_and_allclose():
    a = SparseMatrix.from_entries(2, 2, [(0, 1, 1.0)])
    b = SparseMatrix.from_entries(2, 2, [(0, 1, 1.0)])
    c = SparseMatrix.from_entries(2, 2, [(0, 1, 1.0 + 1e-14)])
    assert a == b
    assert a != c
    assert a.allclose(c)
    assert not a.allclose(SparseMatrix.zeros(2, 2))


def test_row_access():
    m = SparseMatrix.from_entries(3, 4, [(1, 3, 5.0), (1, 0, 2.0)])
    cols, vals = m.row(1)
    assert list(cols) == [0, 3]
    assert list(vals) == [2.0, 5.0]
    assert list(m.row(0)[0]) == []


def test_entries_row_major():
    m = SparseMatrix.from_entries(2, 2, [(1, 0, 3.0), (0, 1, 1.0)])
    assert list(m.entries()) == [(0, 1, 1.0), (1, 0, 3.0)]


def test_dense_cap():
    big = SparseMatrix.zeros(600, 600)
    with pytest.raises(TooLargeForDenseError):
        big.to_dense()


def test_immutability():
    m = SparseMatrix.identity(2)
    with pytest.raises(AttributeError):
        m.rows = 3
    with pytest.raises(ValueError):
        m.values[0] = 5.0
