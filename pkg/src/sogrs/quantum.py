"""Quantum code parameters from Hermitian self-orthogonal MDS codes."""

from __future__ import annotations

import math
from dataclasses import dataclass

from sogrs.codes import LinearCode, hull_dim, is_mds
from sogrs.errors import NotHermitianSO, NotMds, OddDegree, RangeError


@dataclass(frozen=True)
class QuantumParams:
    """[[N, K, D]] over GF(base); ``exact_distance`` is False for a lower bound."""

    N: int
    K: int
    D: int
    base: int
    exact_distance: bool = True

    @property
    def bound_ok(self) -> bool:
        return 2 * self.D <= self.N - self.K + 2

    @property
    def is_mds(self) -> bool:
        return 2 * self.D == self.N - self.K + 2

    def __str__(self) -> str:
        return f"[[{self.N},{self.K},{self.D}]]_{self.base}"

    def to_json(self) -> dict:
        return {"N": self.N, "K": self.K, "D": self.D, "base": self.base,
                "exact_distance": self.exact_distance, "mds": self.is_mds}


def singleton_check(qp: QuantumParams) -> dict:
    """Quantum Singleton bound 2D <= N - K + 2 and whether it is tight."""
    return {"bound_ok": qp.bound_ok, "is_mds": qp.is_mds}


def hermitian_to_quantum(C: LinearCode, mds_budget: int | None = None) -> QuantumParams:
    """[n, k, n-k+1] Hermitian self-orthogonal MDS code -> [[n, n-2k, k+1]] over sqrt(q)."""
    F = C.field
    if F.h % 2:
        raise OddDegree(f"Hermitian form needs even h, got h={F.h}")
    half = F.h // 2
    if hull_dim(C, half) != C.k:
        raise NotHermitianSO("code is not Hermitian self-orthogonal")
    if not C.mds_reason:
        verdict = is_mds(C, "auto", budget=mds_budget)
        if verdict.result != "MDS":
            raise NotMds(f"MDS check returned {verdict.result}")
    base = math.isqrt(F.q)
    return QuantumParams(C.n, C.n - 2 * C.k, C.k + 1, base)


def quantum_from_extended(N: int, K: int, s: int, base: int) -> QuantumParams:
    """[[N-s, N+s-2K, K+1-s]] from an [N, K] Hermitian SO extended GRS code, 0 <= s <= K-1."""
    if not 0 <= s <= K - 1:
        raise RangeError(f"s must lie in 0..{K - 1}, got {s}")
    return QuantumParams(N - s, N + s - 2 * K, K + 1 - s, base)
