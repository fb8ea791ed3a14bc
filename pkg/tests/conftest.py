"""Shared helpers: an independent polynomial-arithmetic field, brute-force code
oracles, and random codes with a prescribed hull dimension."""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from sogrs.codes import LinearCode, galois_inner, hull_dim
from sogrs.field import ZERO, make_field
from sogrs.linalg import MatrixGF, frobenius_entrywise, matmul, nullspace, rank


class PolyField:
    """GF(p^h) as polynomials mod the same modulus, elements encoded as integers
    sum c_j p^j.  Shares nothing with the log/Zech implementation."""

    def __init__(self, F):
        self.p, self.h = F.p, F.h
        self.mod = list(F.modulus)
        self.q = F.q

    def digits(self, x):
        return [(x // self.p**j) % self.p for j in range(self.h)]

    def enc(self, d):
        return sum(int(c) * self.p**j for j, c in enumerate(d))

    def add(self, x, y):
        return self.enc([(a + b) % self.p for a, b in zip(self.digits(x), self.digits(y))])

    def neg(self, x):
        return self.enc([(-a) % self.p for a in self.digits(x)])

    def mul(self, x, y):
        a, b = self.digits(x), self.digits(y)
        prod = [0] * (2 * self.h - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % self.p
        for deg in range(len(prod) - 1, self.h - 1, -1):
            c = prod[deg]
            if c:
                for j in range(self.h + 1):
                    prod[deg - self.h + j] = (prod[deg - self.h + j] - c * self.mod[j]) % self.p
        return self.enc(prod[: self.h])

    def pow(self, x, k):
        out = 1
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def inv(self, x):
        return next(y for y in range(1, self.q) if self.mul(x, y) == 1)


def enc(F, logs):
    return np.asarray(F.to_encoding(np.asarray(logs, dtype=np.int64)))


def logs_of(F, encs):
    return np.asarray(F.from_encoding(np.asarray(encs, dtype=np.int64)))


def brute_span(F, G: MatrixGF) -> set[tuple[int, ...]]:
    """Every codeword, as a tuple of logs, by enumerating all messages."""
    k, n = G.shape
    out = set()
    elems = list(range(-1, F.order))
    for msg in itertools.product(elems, repeat=k):
        cw = np.full(n, ZERO, dtype=np.int64)
        for c, row in zip(msg, G.data):
            cw = F.add(cw, F.mul(row, c))
        out.add(tuple(int(x) for x in cw))
    return out


def brute_min_distance(F, G: MatrixGF) -> int:
    words = brute_span(F, G)
    return min(sum(x >= 0 for x in w) for w in words if any(x >= 0 for x in w))


def random_matrix(F, rows, cols, rng) -> MatrixGF:
    return MatrixGF._wrap(F, rng.integers(-1, F.order, size=(rows, cols)))


def random_code(F, n, k, rng) -> LinearCode:
    while True:
        G = random_matrix(F, k, n, rng)
        if rank(G) == k:
            return LinearCode(G)


def _rand_in_span(F, N: MatrixGF, rng) -> np.ndarray:
    c = rng.integers(-1, F.order, size=(1, N.rows))
    return matmul(MatrixGF._wrap(F, c), N).data[0]


def random_hull_code(F, n, k, l, e, rng, tries=200) -> LinearCode | None:
    """Random [n, k] code whose e-Galois hull has dimension exactly l."""
    h = F.h
    for _ in range(tries):
        H = np.zeros((0, n), dtype=np.int64)
        for _ in range(l):
            if H.shape[0]:
                Hm = MatrixGF._wrap(F, H)
                cons = np.vstack([frobenius_entrywise(Hm, (h - e) % h).data,
                                  frobenius_entrywise(Hm, e).data])
                N = nullspace(MatrixGF._wrap(F, cons))
            else:
                N = MatrixGF.identity(F, n)
            for _ in range(2000):
                x = _rand_in_span(F, N, rng)
                if (x < 0).all() or galois_inner(x, x, e, F).log >= 0:
                    continue
                if rank(MatrixGF._wrap(F, np.vstack([H, x]))) == H.shape[0] + 1:
                    H = np.vstack([H, x])
                    break
            else:
                break
        if H.shape[0] < l:
            continue
        N = (nullspace(frobenius_entrywise(MatrixGF._wrap(F, H), (h - e) % h))
             if l else MatrixGF.identity(F, n))
        rows = [*H] + [_rand_in_span(F, N, rng) for _ in range(k - l)]
        G = MatrixGF._wrap(F, np.array(rows, dtype=np.int64).reshape(k, n))
        if rank(G) < k:
            continue
        C = LinearCode(G)
        if hull_dim(C, e) == l:
            return C
    return None


@pytest.fixture(scope="session")
def gf9():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def gf81():
    return make_field(3, 4)


@pytest.fixture(scope="session")
def gf625():
    return make_field(5, 4)


def construction_instances(p, h, seed=0, per_family=6, extended=None):
    """Valid ConstructionParams for every family over GF(p^h) and every e with 2e | h."""
    import math

    from sogrs.constructions import ConstructionParams, k_bound
    from sogrs.errors import InvalidParams
    from sogrs.field import divisors

    rng = np.random.default_rng(seed)
    q1 = p**h - 1
    out = []
    ext_opts = (False, True) if extended is None else (extended,)

    def keep(P):
        try:
            P.validate()
            if k_bound(P) < 1:
                return False
        except InvalidParams:
            return False
        return True

    for e in (d for d in range(1, h) if h % (2 * d) == 0):
        pe = p**e
        for ext in ext_opts:
            cands = []
            for t in range(1, pe + 1):
                cands.append(ConstructionParams("A", p, h, e, extended=ext, t=t))
                cands.append(ConstructionParams("B", p, h, e, extended=ext, t=t))
            x2s = []
            for d in divisors(q1)[:-1]:
                # the divisor itself and one other generator of the same subgroup
                x2s.append(d)
                co = next((u for u in range(2, q1 // d) if math.gcd(u, q1 // d) == 1), None)
                if co:
                    x2s.append(d * co)
            for x2 in x2s:
                r2 = q1 // math.gcd(q1, x2)
                for x1 in range(1, q1):
                    if math.lcm(x1, x2) % q1 or (x1 * (pe - 1)) % math.gcd(x2, q1):
                        continue
                    ord1 = q1 // math.gcd(q1, x1)
                    for r1 in range(1, ord1 + 1):
                        if ext and (r1 * r2) % (pe + 1):
                            continue
                        cands.append(ConstructionParams("C", p, h, e, extended=ext, x1=x1,
                                                        x2=x2, r1=r1))
            y = q1 // (pe - 1)
            for m in divisors(q1):
                m1 = m // math.gcd(m, y)
                for r in range(1, (pe - 1) // m1 + 1):
                    cands.append(ConstructionParams("D", p, h, e, extended=ext, m=m, r=r))
            for fam in "ABCD":
                pool = [P for P in cands if P.family == fam and keep(P)]
                if per_family is not None and len(pool) > per_family:
                    idx = rng.choice(len(pool), per_family, replace=False)
                    pool = [pool[i] for i in sorted(idx)]
                out.extend(pool)
    return out
