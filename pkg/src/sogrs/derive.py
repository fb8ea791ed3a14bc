"""Hull calculus under shortening, puncturing and direct-sum splitting, plus
parameter enumeration for self-orthogonal extended GRS families."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from sogrs.codes import (
    LinearCode,
    Verdict,
    galois_dual,
    gram,
    hull,
    hull_dim,
    is_mds,
    min_distance,
    puncture,
    shorten,
)
from sogrs.constructions import ConstructionParams, build, predicted_parameters
from sogrs.errors import DistanceBound, EmptyResult, HullTooSmall, InvalidParams
from sogrs.field import ZERO, divisors, make_field
from sogrs.linalg import (
    MatrixGF,
    frobenius_entrywise,
    matmul,
    nullspace,
    rank,
    rref,
    transpose,
)
from sogrs.provenance import DerivationRecord, Step


@dataclass(frozen=True)
class DeriveResult:
    code: LinearCode
    T: tuple[int, ...]
    hull_dim: int
    rule: str
    mds: Verdict | None = None


@dataclass(frozen=True)
class ParamTuple:
    N: int
    K: int
    condition: str
    raw: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"N": self.N, "K": self.K, "condition": self.condition, "raw": dict(self.raw)}


# -- radicals --------------------------------------------------------------


def right_radical(C: LinearCode, e: int) -> MatrixGF:
    """Basis of {y in C : (c, y)_e = 0 for all c in C}."""
    F = C.field
    if C.k == 0:
        return MatrixGF.zeros(F, 0, C.n)
    Z = nullspace(gram(C, e))
    if Z.rows == 0:
        return MatrixGF.zeros(F, 0, C.n)
    Z = frobenius_entrywise(Z, (F.h - e) % F.h)
    return rref(matmul(Z, C.gen)).row_basis()


def _complement_rows(L: MatrixGF, G: MatrixGF) -> MatrixGF:
    """Rows of G that extend the row space of L to that of G (first-fit order)."""
    stacked = L.vstack(G)
    piv = rref(transpose(stacked)).pivot_cols
    return stacked.take_rows([i for i in piv if i >= L.rows])


def decompose(C: LinearCode, e: int, s: int) -> tuple[LinearCode, LinearCode]:
    """Split C = C1 + C2 with C1 self-orthogonal of dimension s and hull(C2) = l - s.

    C1 is spanned by the first s rows of the reduced hull basis.  C2 holds the
    remaining hull rows and a complement W of the hull, where W's rows are
    shifted by hull vectors until the Gram matrix of W is nonsingular (this
    keeps the form's full rank on C2 for every e).
    """
    F = C.field
    H = hull(C, e)
    l = H.dim
    if not 1 <= s <= l:
        raise HullTooSmall(f"need 1 <= s <= hull dimension {l}, got s={s}")
    L = H.basis
    W = _complement_rows(L, C.gen)
    W = _regularize(C, W, L, e)
    C1 = LinearCode.spanned_by(L.take_rows(range(s)),
                               C.provenance.then(Step("decompose", {"e": e, "s": s, "part": 1})))
    rows = L.take_rows(range(s, l)).vstack(W)
    rec = C.provenance.then(Step("decompose", {"e": e, "s": s, "part": 2}))
    if rows.rows == 0:
        C2 = LinearCode.zero(F, C.n, rec)
    else:
        C2 = LinearCode.spanned_by(rows, rec)
    return C1, C2


def _regularize(C: LinearCode, W: MatrixGF, L: MatrixGF, e: int) -> MatrixGF:
    """Add hull rows to rows of W so that the e-Gram matrix of W becomes nonsingular."""
    F = C.field
    if W.rows == 0:
        return W
    Q = matmul(W, transpose(frobenius_entrywise(W, e))).data
    X = matmul(W, transpose(frobenius_entrywise(L, e))).data
    Wd = W.data.copy()
    basis = np.zeros((0, Q.shape[0]), dtype=np.int64)
    for mcol in range(Q.shape[1]):
        col = Q[:, mcol]
        if _extends(F, basis, col):
            basis = np.vstack([basis, col])
            continue
        for j in range(X.shape[1]):
            if _extends(F, basis, X[:, j]):
                col = F.add(col, X[:, j])
                Wd[mcol] = F.add(Wd[mcol], L.data[j])
                basis = np.vstack([basis, col])
                break
        else:
            raise AssertionError("Gram matrix cannot be regularized; hull basis inconsistent")
    return MatrixGF._wrap(F, Wd)


def _extends(F, basis: np.ndarray, vec: np.ndarray) -> bool:
    if (vec < 0).all():
        return False
    M = MatrixGF._wrap(F, np.vstack([basis, vec]))
    return rank(M) == basis.shape[0] + 1


# -- coordinate selection ---------------------------------------------------


def _systematic_order(C: LinearCode) -> list[int]:
    piv = list(rref(C.gen).pivot_cols)
    pset = set(piv)
    return piv + [c for c in range(C.n) if c not in pset]


def _rank_on(M: MatrixGF, T: list[int]) -> int:
    return rank(M.take_cols(T)) if T else 0


def _select_T(C: LinearCode, e: int, s: int) -> tuple[tuple[int, ...], str, tuple[int, ...]]:
    """Coordinates T (|T| = s) with C_T of hull dimension exactly l - s.

    First choice: in the systematic frame, the first s pivots of the reduced
    hull basis.  That forces the left radical (the hull) to have rank s on T;
    for e with 2e != h and e != 0 the right radical may differ from the hull
    and must also have rank s on T, otherwise a first-fit common search runs.
    """
    H = hull(C, e)
    L = H.basis
    order = _systematic_order(C)
    red = rref(L.take_cols(order))
    T = sorted(order[j] for j in red.pivot_cols[:s])
    R = L if _radicals_coincide(C, e, L.rows) else right_radical(C, e)
    if _rank_on(R, T) == s:
        return tuple(T), "hull-pivots", tuple(order)
    chosen: list[int] = []
    for c in order:
        trial = chosen + [c]
        if _rank_on(L, trial) == len(trial) and _rank_on(R, trial) == len(trial):
            chosen = trial
            if len(chosen) == s:
                return tuple(sorted(chosen)), "common-first-fit", tuple(order)
    rng = np.random.default_rng(0)
    for _ in range(200):
        chosen = []
        for c in rng.permutation(C.n).tolist():
            trial = chosen + [c]
            if _rank_on(L, trial) == len(trial) and _rank_on(R, trial) == len(trial):
                chosen = trial
                if len(chosen) == s:
                    return tuple(sorted(chosen)), "common-random", tuple(order)
    raise HullTooSmall(f"no {s} coordinates support both radicals")


def _radicals_coincide(C: LinearCode, e: int, l: int) -> bool:
    """Left and right radicals agree for symmetric-type forms and for SO codes."""
    return e == 0 or 2 * e == C.field.h or l == C.k


def _mds_check(code: LinearCode, budget: int | None, seed: int) -> Verdict:
    v = is_mds(code, "auto", budget=budget, seed=seed)
    if v.result == "Probable":
        return Verdict(v.claim, v.mode, v.result, v.witness, {**v.detail, "theorem": True})
    return v


def shorten_with_hull(C: LinearCode, e: int, s: int, verify_mds: bool = False,
                      budget: int | None = None, seed: int = 0) -> DeriveResult:
    """Shorten on s coordinates so the hull drops from l to exactly l - s."""
    l = hull_dim(C, e)
    if s == 0:
        return DeriveResult(C, (), l, "identity")
    if not 1 <= s <= l:
        raise HullTooSmall(f"need 1 <= s <= hull dimension {l}, got s={s}")
    if C.k - s < 1:
        raise EmptyResult(f"shortening a dimension-{C.k} code on {s} coordinates")
    T, rule, order = _select_T(C, e, s)
    out = shorten(C, T)
    step = Step("shorten", {"e": e, "s": s, "rule": rule}, T, order)
    out = out.with_provenance(C.provenance.then(step))
    got = hull_dim(out, e)
    if got != l - s:
        raise AssertionError(f"hull dimension {got} after shortening, expected {l - s}")
    mds = _mds_check(out, budget, seed) if verify_mds else None
    return DeriveResult(out, T, got, rule, mds)


def _known_distance(C: LinearCode, budget: int | None) -> int | None:
    if C.mds_reason:
        return C.n - C.k + 1
    res = min_distance(C, budget or 2**18)
    return res.d


def puncture_with_hull(C: LinearCode, e: int, s: int, verify_mds: bool = False,
                       budget: int | None = None, seed: int = 0) -> DeriveResult:
    """Puncture on s coordinates so the hull drops from l to exactly l - s.

    T is the shortening set of the e-Galois dual, since puncturing C on T is
    dual to shortening C^{perp_e} on T and both codes share the hull dimension.
    """
    l = hull_dim(C, e)
    if s == 0:
        return DeriveResult(C, (), l, "identity")
    if not 1 <= s <= l:
        raise HullTooSmall(f"need 1 <= s <= hull dimension {l}, got s={s}")
    d = _known_distance(C, budget)
    if d is not None and s >= d:
        raise DistanceBound(f"puncturing {s} >= d = {d} coordinates")
    D = galois_dual(C, e)
    if D.k < s:
        raise HullTooSmall("dual too small to shorten")
    T, rule, order = _select_T(D, e, s)
    out = puncture(C, T)
    flags = sorted(out.provenance.flags - C.provenance.flags)
    params = {"e": e, "s": s, "rule": rule}
    if flags:
        params["flags"] = flags
    out = out.with_provenance(C.provenance.then(Step("puncture", params, T, order)))
    got = hull_dim(out, e)
    if out.k != C.k or got != l - s:
        raise AssertionError(f"puncture gave [{out.n},{out.k}] with hull {got}")
    mds = _mds_check(out, budget, seed) if verify_mds else None
    return DeriveResult(out, T, got, rule, mds)


def derive_so_mds(C: LinearCode, e: int, s: int, budget: int | None = None,
                  seed: int = 0) -> DeriveResult:
    """[n, k, n-k+1] SO MDS  ->  [n-s, k-s, n-k+1] SO MDS, for 1 <= s <= k-1."""
    if hull_dim(C, e) != C.k:
        raise InvalidParams("input must be e-Galois self-orthogonal")
    if not 1 <= s <= C.k - 1:
        raise InvalidParams(f"need 1 <= s <= k-1 = {C.k - 1}")
    return shorten_with_hull(C, e, s, verify_mds=True, budget=budget, seed=seed)


def derive_hull_mds(C: LinearCode, e: int, s: int, budget: int | None = None,
                    seed: int = 0) -> DeriveResult:
    """[n, k, n-k+1] SO MDS  ->  [n-s, k, n-s-k+1] MDS with (k-s)-dimensional hull."""
    if hull_dim(C, e) != C.k:
        raise InvalidParams("input must be e-Galois self-orthogonal")
    if not 1 <= s <= C.k or s >= C.n - C.k + 1:
        raise InvalidParams(f"need 1 <= s <= k and s < n-k+1; got s={s}")
    return puncture_with_hull(C, e, s, verify_mds=True, budget=budget, seed=seed)


# -- e' routing ------------------------------------------------------------


def classify_eprime(h: int, eprime: int) -> tuple[str, int]:
    """("S1" | "S2", gcd(e', h)); S1 when h / gcd(e', h) is even."""
    if not 0 <= eprime <= h - 1:
        raise InvalidParams(f"e' must lie in 0..{h - 1}")
    g = math.gcd(eprime, h)
    return ("S1" if (h // g) % 2 == 0 else "S2"), g


# -- parameter enumeration --------------------------------------------------


_CONDITION_FAMILY = {"i": "A", "ii": "B", "iii": "C", "iv": "D"}


def _candidates(p: int, h: int, e: int, cond: str, ranges: dict):
    q1 = p**h - 1
    pe = p**e
    if cond == "i":
        for t in ranges.get("t", range(1, pe + 1)):
            yield {"t": t}
    elif cond == "ii":
        for t in ranges.get("t", range(1, pe)):
            yield {"t": t}
    elif cond == "iii":
        pairs = ranges.get("pairs")
        if pairs is None:
            ds = divisors(q1)
            pairs = [(a, b) for a in ds for b in ds]
        for x1, x2 in pairs:
            ord1 = q1 // math.gcd(q1, x1)
            for r1 in ranges.get("r1", range(1, ord1 + 1)):
                yield {"x1": x1, "x2": x2, "r1": r1}
    else:
        for m in ranges.get("m", divisors(q1)):
            for r in ranges.get("r", range(1, pe)):
                yield {"m": m, "r": r}


def enumerate_extended_params(p: int, h: int, e: int, conditions: Iterable[str] = ("i", "ii", "iii", "iv"),
                              ranges: dict | None = None) -> list[ParamTuple]:
    """(N, K) of every admissible self-orthogonal extended GRS instance.

    Conditions map to families: i) trace fibers, ii) norm fibers, iii) two
    cyclic subgroups, iv) cosets of a subgroup.  ``ranges`` optionally narrows
    each parameter (keys ``t``, ``pairs``, ``r1``, ``m``, ``r``).
    """
    if p % 2 == 0 or e < 1 or h % (2 * e):
        raise InvalidParams("need p odd and 2e | h")
    ranges = ranges or {}
    out = []
    for cond in conditions:
        fam = _CONDITION_FAMILY[cond]
        for raw in _candidates(p, h, e, cond, ranges):
            P = ConstructionParams(fam, p, h, e, extended=True, **raw)
            try:
                N, K, _ = predicted_parameters(P)
            except InvalidParams:
                continue
            if 0 < K < N:
                out.append(ParamTuple(N, K, cond, raw))
    return out


# -- replay ------------------------------------------------------------------


def root_code(record: DerivationRecord) -> LinearCode:
    root = record.root or {}
    if "construction" in root:
        P = ConstructionParams.from_json(root["construction"])
        return build(P).code.with_provenance(DerivationRecord(root))
    if "generator" in root:
        fd = root["field"]
        F = make_field(fd["p"], fd["h"], tuple(fd["modulus"]))
        G = MatrixGF(F, [[ZERO if x < 0 else x for x in row] for row in root["generator"]])
        return LinearCode(G, DerivationRecord(root))
    raise InvalidParams("derivation record has no replayable root")


def replay(record: DerivationRecord) -> LinearCode:
    """Re-run every recorded step from the root; the result is bit-identical."""
    C = root_code(record)
    rec = DerivationRecord(record.root)
    for st in record.steps:
        op = st.operation
        if op == "dual":
            C = galois_dual(C, st.params["e"])
        elif op == "shorten":
            C = shorten(C, st.T or ())
        elif op == "puncture":
            C = puncture(C, st.T or ())
        elif op == "decompose":
            parts = decompose(C, st.params["e"], st.params["s"])
            C = parts[st.params["part"] - 1]
        else:
            raise InvalidParams(f"cannot replay step {op!r}")
        rec = rec.then(st)
        C = C.with_provenance(rec)
    return C
