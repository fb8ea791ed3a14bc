import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_matrix
from sogrs.errors import DimensionMismatch
from sogrs.field import ZERO, make_field
from sogrs.linalg import (
    MatrixGF,
    _reduce_inplace,
    frobenius_entrywise,
    matmul,
    nullspace,
    rank,
    row_basis,
    rref,
    same_row_space,
    transpose,
)


def naive_matmul(F, A, B):
    out = np.full((A.shape[0], B.shape[1]), ZERO, dtype=np.int64)
    for i in range(A.shape[0]):
        for j in range(B.shape[1]):
            acc = ZERO
            for t in range(A.shape[1]):
                acc = F.add(acc, F.mul(int(A[i, t]), int(B[t, j])))
            out[i, j] = acc
    return out


def brute_rank(F, M):
    """log_q of the number of distinct combinations of the rows."""
    seen = set()
    for coeffs in itertools.product(range(-1, F.order), repeat=M.rows):
        v = np.full(M.cols, ZERO, dtype=np.int64)
        for c, row in zip(coeffs, M.data):
            v = F.add(v, F.mul(row, c))
        seen.add(tuple(v))
    r = 0
    while F.q**r < len(seen):
        r += 1
    assert F.q**r == len(seen)
    return r


def is_rref(F, M, pivots):
    D = M.data
    last = -1
    for i, pc in enumerate(pivots):
        row = D[i]
        assert (row[:pc] < 0).all() and row[pc] == 0 and pc > last
        col = D[:, pc]
        assert (np.delete(col, i) < 0).all()
        last = pc
    return (D[len(pivots):] < 0).all()


def test_examples():
    F9 = make_field(3, 2)
    I3 = MatrixGF.identity(F9, 3)
    r = rref(I3)
    assert r.rank == 3 and r.pivot_cols == (0, 1, 2)
    z = rref(MatrixGF.zeros(F9, 2, 5))
    assert z.rank == 0 and z.pivot_cols == ()
    F3 = make_field(3, 1)
    r = rref(MatrixGF.from_ints(F3, [[1, 2], [2, 1]]))
    assert r.rank == 1 and r.pivot_cols == (0,)
    N = nullspace(MatrixGF.from_ints(F3, [[1, 1, 1]]))
    assert N.rows == 2
    for row in N.data:
        assert F3.sum(row) == ZERO
    assert nullspace(I3).rows == 0
    assert frobenius_entrywise(MatrixGF(F9, [[1]]), 1) == MatrixGF(F9, [[3]])


@pytest.mark.parametrize("p,h", [(3, 1), (3, 2), (5, 1)])
def test_rank_matches_enumeration(p, h):
    F = make_field(p, h)
    rng = np.random.default_rng(p * 10 + h)
    for _ in range(25):
        r, c = rng.integers(1, 4), rng.integers(1, 5)
        M = random_matrix(F, r, c, rng)
        if rng.random() < 0.3 and r > 1:
            M = MatrixGF._wrap(F, np.vstack([M.data[:-1], M.data[:1]]))
        assert rank(M) == brute_rank(F, M)


def test_nullspace_random_gf81():
    F = make_field(3, 4)
    rng = np.random.default_rng(1)
    M = random_matrix(F, 4, 10, rng)
    N = nullspace(M)
    assert rank(M) == 4 and N.rows == 6 and rank(N) == 6
    assert matmul(M, transpose(N)).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 9), st.integers(1, 12),
       st.sampled_from([(3, 2), (3, 4), (5, 2), (7, 2)]))
def test_rref_properties(seed, r, c, ph):
    F = make_field(*ph)
    rng = np.random.default_rng(seed)
    M = random_matrix(F, r, c, rng)
    if rng.random() < 0.5:
        M = MatrixGF._wrap(F, np.where(rng.random((r, c)) < 0.6, ZERO, M.data))
    res = rref(M)
    assert is_rref(F, res.reduced, res.pivot_cols)
    assert rref(res.reduced).reduced == res.reduced
    assert rank(M) == rank(transpose(M))
    N = nullspace(M)
    assert res.rank + N.rows == c
    assert matmul(M, transpose(N)).is_zero()
    assert same_row_space(M, res.reduced)
    tr = rref(M, track=True)
    assert tr.reduced == res.reduced
    assert matmul(tr.row_ops, M) == tr.reduced


@pytest.mark.parametrize("shape", [(70, 1100), (300, 400), (130, 130)])
def test_blocked_reduction_is_bit_identical(shape):
    F = make_field(3, 4)
    rng = np.random.default_rng(sum(shape))
    M = random_matrix(F, *shape, rng)
    M = MatrixGF._wrap(F, np.vstack([M.data, M.data[:5]]))  # force dependencies
    A = M.data.copy()
    piv = _reduce_inplace(F, A)
    res = rref(M)
    assert res.pivot_cols == tuple(piv)
    assert np.array_equal(res.reduced.data, A)


@pytest.mark.parametrize("p,h", [(3, 2), (3, 4), (5, 4), (3, 8), (7, 2)])
def test_matmul_matches_naive(p, h):
    F = make_field(p, h)
    rng = np.random.default_rng(h)
    A = random_matrix(F, 7, 11, rng)
    B = random_matrix(F, 11, 5, rng)
    assert np.array_equal(matmul(A, B).data, naive_matmul(F, A.data, B.data))
    assert matmul(A, MatrixGF.identity(F, 11)) == A


def test_matmul_large_inner_dimension_exact():
    # pushes the accumulator past the float32 range so the float64 path runs
    F = make_field(7, 2)
    rng = np.random.default_rng(9)
    A = random_matrix(F, 3, 250000, rng)
    B = random_matrix(F, 250000, 2, rng)
    want = [[F.sum(F.mul(A.data[i], B.data[:, j])) for j in range(2)] for i in range(3)]
    assert matmul(A, B).data.tolist() == want


def test_frobenius_and_errors():
    F = make_field(3, 4)
    rng = np.random.default_rng(2)
    M = random_matrix(F, 3, 4, rng)
    assert frobenius_entrywise(M, 0) == M
    assert frobenius_entrywise(M, 4) == M
    assert frobenius_entrywise(frobenius_entrywise(M, 1), 3) == M
    with pytest.raises(DimensionMismatch):
        matmul(M, M)
    with pytest.raises(DimensionMismatch):
        M.vstack(random_matrix(F, 1, 5, rng))
    with pytest.raises(DimensionMismatch):
        MatrixGF(F, [1, 2, 3])


def test_row_basis_canonical():
    F = make_field(5, 2)
    rng = np.random.default_rng(4)
    M = random_matrix(F, 4, 7, rng)
    T = random_matrix(F, 4, 4, rng)
    while rank(T) < 4:
        T = random_matrix(F, 4, 4, rng)
    assert row_basis(matmul(T, M)) == row_basis(M)
