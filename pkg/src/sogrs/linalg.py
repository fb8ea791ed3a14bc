"""Dense exact linear algebra over GF(p^h).

Matrices hold discrete-log entries (``ZERO`` for 0).  Row reduction works
directly on logs through the field's Zech table.  Products are computed over
GF(p) digit planes with BLAS: every entry is written as sum_j c_j x^j, the
h^2 plane products are exact integer matmuls in floating point, and the
result polynomial is reduced modulo the field modulus.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from sogrs.errors import DimensionMismatch
from sogrs.field import ZERO, FieldContext

_BLOCK = 512


class MatrixGF:
    __slots__ = ("field", "data")

    def __init__(self, field: FieldContext, data):
        arr = np.array(data, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            if arr.size == 0:
                arr = arr.reshape(0, 0)
            else:
                raise DimensionMismatch("matrix data must be two dimensional")
        arr[arr < 0] = ZERO
        arr.flags.writeable = False
        self.field = field
        self.data = arr

    @classmethod
    def _wrap(cls, field: FieldContext, arr: np.ndarray) -> MatrixGF:
        obj = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.flags.writeable = False
        obj.field = field
        obj.data = arr
        return obj

    @classmethod
    def from_ints(cls, field: FieldContext, rows) -> MatrixGF:
        """Matrix whose entries are prime-field integers."""
        arr = np.asarray(rows, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(len(rows), 0) if arr.ndim < 2 else arr
        return cls._wrap(field, field.from_int(arr) if arr.size else arr)

    @classmethod
    def zeros(cls, field: FieldContext, rows: int, cols: int) -> MatrixGF:
        return cls._wrap(field, np.full((rows, cols), ZERO, dtype=np.int64))

    @classmethod
    def identity(cls, field: FieldContext, n: int) -> MatrixGF:
        arr = np.full((n, n), ZERO, dtype=np.int64)
        np.fill_diagonal(arr, 0)
        return cls._wrap(field, arr)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def T(self) -> MatrixGF:
        return transpose(self)

    def __matmul__(self, other: MatrixGF) -> MatrixGF:
        return matmul(self, other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MatrixGF) and self.field == other.field
                and self.shape == other.shape and np.array_equal(self.data, other.data))

    def __repr__(self) -> str:
        return f"MatrixGF({self.rows}x{self.cols} over {self.field})"

    def is_zero(self) -> bool:
        return bool(np.all(self.data < 0))

    def take_rows(self, idx) -> MatrixGF:
        return MatrixGF._wrap(self.field, self.data[np.asarray(idx, dtype=np.int64)])

    def take_cols(self, idx) -> MatrixGF:
        idx = np.asarray(idx, dtype=np.int64)
        return MatrixGF._wrap(self.field, self.data[:, idx].reshape(self.rows, idx.size))

    def delete_cols(self, idx) -> MatrixGF:
        keep = np.setdiff1d(np.arange(self.cols), np.asarray(list(idx), dtype=np.int64))
        return self.take_cols(keep)

    def vstack(self, other: MatrixGF) -> MatrixGF:
        if self.cols != other.cols:
            raise DimensionMismatch("column counts differ")
        return MatrixGF._wrap(self.field, np.vstack([self.data, other.data]))

    def to_list(self) -> list[list[int]]:
        return self.data.tolist()


@dataclass(frozen=True)
class RrefResult:
    reduced: MatrixGF
    pivot_cols: tuple[int, ...]
    rank: int
    row_ops: MatrixGF | None = None

    def row_basis(self) -> MatrixGF:
        return self.reduced.take_rows(range(self.rank))


def transpose(M: MatrixGF) -> MatrixGF:
    return MatrixGF._wrap(M.field, M.data.T)


def frobenius_entrywise(M: MatrixGF, e: int) -> MatrixGF:
    return MatrixGF._wrap(M.field, M.field.frob(M.data, e).reshape(M.shape))


def _reduce_inplace(F: FieldContext, A: np.ndarray, ncols: int | None = None,
                    perm: np.ndarray | None = None) -> list[int]:
    """Gauss-Jordan on ``A`` with pivots among its first ``ncols`` columns.

    ``perm`` (if given) is permuted alongside the rows so callers can tell
    which original rows ended up as pivot rows.
    """
    rows, cols = A.shape
    ncols = cols if ncols is None else ncols
    order, half = F.order, F.neg_one
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c] >= 0)
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
            if perm is not None:
                perm[[r, pr]] = perm[[pr, r]]
        inv = (-A[r, c]) % order
        row = A[r, c:]
        A[r, c:] = np.where(row < 0, ZERO, (row + inv) % order)
        others = np.flatnonzero(A[:, c] >= 0)
        others = others[others != r]
        if others.size:
            negf = (A[others, c] + half) % order
            prow = A[r, c:]
            prod = np.where(prow[None, :] < 0, ZERO, (negf[:, None] + prow[None, :]) % order)
            A[others, c:] = F.add(A[others, c:], prod)
        pivots.append(c)
        r += 1
    return pivots


def _inverse_logs(F: FieldContext, M: np.ndarray) -> np.ndarray:
    n = M.shape[0]
    aug = np.hstack([M, MatrixGF.identity(F, n).data])
    piv = _reduce_inplace(F, aug, n)
    if len(piv) != n:
        raise ValueError("singular block")
    return aug[:, n:]


_PANEL = 64
_BLOCKED_MIN = 64 * 1024


def _reduce_blocked(F: FieldContext, A: np.ndarray) -> list[int]:
    """Panel-wise Gauss-Jordan; trailing updates go through :func:`matmul`.

    The reduced row echelon form is unique, so the result is identical to
    the scalar elimination.
    """
    m, n = A.shape
    r = 0
    pivots: list[int] = []
    for c0 in range(0, n, _PANEL):
        if r == m:
            break
        c1 = min(c0 + _PANEL, n)
        S = A[r:, c0:c1].copy()
        perm = np.arange(m - r)
        local = _reduce_inplace(F, S, perm=perm)
        p = len(local)
        if p == 0:
            continue
        R = r + perm[:p]
        pc = c0 + np.asarray(local)
        X = _inverse_logs(F, A[np.ix_(R, pc)])
        block = MatrixGF._wrap(F, A[R, c0:])
        Pr = matmul(MatrixGF._wrap(F, X), block).data
        chosen = np.zeros(m, dtype=bool)
        chosen[R] = True
        others = np.flatnonzero(~chosen)
        coef = F.neg(A[np.ix_(others, pc)])
        live = np.flatnonzero((coef >= 0).any(axis=1))
        if live.size:
            upd = matmul(MatrixGF._wrap(F, coef[live]), MatrixGF._wrap(F, Pr)).data
            rows_live = others[live]
            A[rows_live, c0:] = F.add(A[rows_live, c0:], upd)
        rest = others[others >= r]
        A[r + p:] = A[rest]
        A[r:r + p, :c0] = ZERO
        A[r:r + p, c0:] = Pr
        pivots.extend(int(c) for c in pc)
        r += p
    return pivots


def rref(M: MatrixGF, track: bool = False) -> RrefResult:
    """Reduced row echelon form with the first-nonzero-row pivot rule.

    With ``track=True`` the transform ``row_ops`` satisfies
    ``row_ops @ M == reduced``.
    """
    F = M.field
    if track:
        A = np.hstack([M.data, MatrixGF.identity(F, M.rows).data]).copy()
        piv = _reduce_inplace(F, A, M.cols)
        red = MatrixGF._wrap(F, A[:, : M.cols])
        ops = MatrixGF._wrap(F, A[:, M.cols:])
        return RrefResult(red, tuple(piv), len(piv), ops)
    A = M.data.copy()
    if A.size >= _BLOCKED_MIN and min(A.shape) > _PANEL:
        piv = _reduce_blocked(F, A)
    else:
        piv = _reduce_inplace(F, A)
    return RrefResult(MatrixGF._wrap(F, A), tuple(piv), len(piv))


def rank(M: MatrixGF) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return rref(M).rank


def row_basis(M: MatrixGF) -> MatrixGF:
    """Canonical basis of the row space (the nonzero rows of the RREF)."""
    return rref(M).row_basis()


def same_row_space(A: MatrixGF, B: MatrixGF) -> bool:
    if A.cols != B.cols:
        return False
    return row_basis(A) == row_basis(B)


def nullspace(M: MatrixGF) -> MatrixGF:
    """Basis (as rows) of {x : M x^T = 0}."""
    F = M.field
    n = M.cols
    if M.rows == 0:
        return MatrixGF.identity(F, n)
    res = rref(M)
    piv = list(res.pivot_cols)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.full((len(free), n), ZERO, dtype=np.int64)
    if free:
        R = res.reduced.data[: res.rank]
        idx = np.arange(len(free))
        out[idx, free] = 0
        for i, pc in enumerate(piv):
            out[:, pc] = F.neg(R[i, free])
    return MatrixGF._wrap(F, out)


def _digits(F: FieldContext, logs: np.ndarray, dtype) -> np.ndarray:
    """Base-p digit planes of the encodings, shape ``(h,) + logs.shape``."""
    enc = np.asarray(F.to_encoding(logs), dtype=np.int64)
    planes = np.empty((F.h,) + enc.shape, dtype=dtype)
    for j in range(F.h):
        planes[j] = enc % F.p
        enc = enc // F.p
    return planes


@lru_cache(maxsize=64)
def _reduction_matrix(F: FieldContext) -> np.ndarray:
    """Row d holds the coefficients of x^d mod the field modulus, d < 2h - 1."""
    p, h = F.p, F.h
    R = np.zeros((2 * h - 1, h), dtype=np.int64)
    R[:h, :h] = np.eye(h, dtype=np.int64)
    mod = np.asarray(F.modulus[:h], dtype=np.int64)
    for d in range(h, 2 * h - 1):
        prev = R[d - 1]
        # x * prev, then replace x^h by -(c_0 + ... + c_{h-1} x^{h-1})
        shifted = np.concatenate([[0], prev[:-1]])
        R[d] = (shifted - prev[-1] * mod) % p
    return R


def _float_mod(x: np.ndarray, p: int) -> np.ndarray:
    """Exact x mod p for nonnegative integer-valued floats (np.fmod is slow)."""
    x -= p * np.floor(x * (1.0 / p))
    x[x < 0] += p
    x[x >= p] -= p
    return x


def _reduce_poly(F: FieldContext, acc: np.ndarray, bound: int) -> np.ndarray:
    """Map stacked coefficient planes of degree < 2h-1 to field logs.

    ``bound`` caps the entries of ``acc``; it picks the narrowest exact dtype.
    """
    p, h = F.p, F.h
    dtype = np.float32 if (2 * h - 1) * (p - 1) * bound < 2**24 else np.float64
    R = _reduction_matrix(F).astype(dtype)
    flat = acc.reshape(acc.shape[0], -1).astype(dtype, copy=False)
    coeffs = _float_mod(R.T @ flat, p)
    powers = (p ** np.arange(h)).astype(np.float64)
    enc = np.rint(powers @ coeffs.astype(np.float64, copy=False)).astype(np.int64)
    return F.log_table[enc].reshape(acc.shape[1:])


def matmul(A: MatrixGF, B: MatrixGF) -> MatrixGF:
    if A.cols != B.rows:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    if A.field != B.field:
        raise ValueError("matrices over different fields")
    F = A.field
    m, n, k = A.rows, A.cols, B.cols
    h = F.h
    out = np.full((m, k), ZERO, dtype=np.int64)
    if m == 0 or k == 0 or n == 0:
        return MatrixGF._wrap(F, out)
    # accumulated planes stay below h n (p-1)^2; float32 is exact under 2^24
    bound = h * n * (F.p - 1) ** 2
    dtype = np.float32 if bound < 2**24 else np.float64
    for c0 in range(0, k, _BLOCK):
        Bd = _digits(F, B.data[:, c0:c0 + _BLOCK], dtype)
        kc = Bd.shape[2]
        for r0 in range(0, m, _BLOCK):
            Ad = _digits(F, A.data[r0:r0 + _BLOCK], dtype)
            mr = Ad.shape[1]
            stacked = Ad.reshape(h * mr, n)
            acc = np.zeros((2 * h - 1, mr, kc), dtype=dtype)
            for j in range(h):
                acc[j:j + h] += (stacked @ Bd[j]).reshape(h, mr, kc)
            out[r0:r0 + mr, c0:c0 + kc] = _reduce_poly(F, acc, bound)
    return MatrixGF._wrap(F, out)


def matvec_logs(F: FieldContext, M: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Small helper: M (r x c) times column vector v (c,) via Zech sums."""
    return F.sum(F.mul(M, v[None, :]), axis=1)
