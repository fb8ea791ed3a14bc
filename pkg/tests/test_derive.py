import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_min_distance, random_code, random_hull_code
from sogrs.codes import LinearCode, galois_dual, hull_dim, is_self_orthogonal, min_distance
from sogrs.constructions import ConstructionParams, build
from sogrs.derive import (
    classify_eprime,
    decompose,
    derive_hull_mds,
    derive_so_mds,
    enumerate_extended_params,
    puncture_with_hull,
    replay,
    right_radical,
    shorten_with_hull,
)
from sogrs.errors import DistanceBound, EmptyResult, HullTooSmall, InvalidParams
from sogrs.field import make_field
from sogrs.linalg import MatrixGF, rank
from sogrs.tables import rows_for


@pytest.fixture(scope="module")
def so22():
    return build(ConstructionParams("C", 3, 4, 1, x1=720, x2=772, r1=1, extended=True)).code


@pytest.fixture(scope="module")
def so26():
    return build(ConstructionParams("C", 5, 4, 1, x1=624, x2=754, r1=1, extended=True)).code


def test_root_codes(so22, so26):
    assert (so22.n, so22.k) == (22, 6) and hull_dim(so22, 1) == 6
    assert (so26.n, so26.k) == (26, 5) and hull_dim(so26, 1) == 5


@pytest.mark.parametrize("root,want", [
    ("so22", [(21, 5, 17), (20, 4, 17), (19, 3, 17), (18, 2, 17), (17, 1, 17)]),
    ("so26", [(25, 4, 22), (24, 3, 22), (23, 2, 22), (22, 1, 22)]),
])
def test_shortened_so_chain(root, want, request):
    C = request.getfixturevalue(root)
    got = []
    for s in range(1, C.k):
        r = derive_so_mds(C, 1, s)
        assert r.mds.result == "MDS"
        assert is_self_orthogonal(r.code, 1) and r.hull_dim == r.code.k
        got.append((r.code.n, r.code.k, r.code.n - r.code.k + 1))
    assert got == want


@pytest.mark.parametrize("root,want", [
    ("so22", [(21, 6, 16, 5), (20, 6, 15, 4), (19, 6, 14, 3), (18, 6, 13, 2), (17, 6, 12, 1),
              (16, 6, 11, 0)]),
    ("so26", [(25, 5, 21, 4), (24, 5, 20, 3), (23, 5, 19, 2), (22, 5, 18, 1), (21, 5, 17, 0)]),
])
def test_punctured_hull_chain(root, want, request):
    C = request.getfixturevalue(root)
    got = []
    for s in range(1, C.k + 1):
        r = derive_hull_mds(C, 1, s)
        assert r.mds.result == "MDS"
        assert hull_dim(r.code, 1) == r.hull_dim
        got.append((r.code.n, r.code.k, r.code.n - r.code.k + 1, r.hull_dim))
    assert got == want


def test_small_so_shorten_example():
    C = build(ConstructionParams("C", 3, 4, 1, x1=720, x2=780, r1=1, extended=True)).code
    r = derive_so_mds(C, 1, 1)
    assert (r.code.n, r.code.k) == (5, 1)
    assert brute_min_distance(C.field, r.code.gen) == 5
    assert r.mds.result == "MDS"


def _ledger_case(F, n, k, l, e, seed):
    rng = np.random.default_rng(seed)
    C = random_hull_code(F, n, k, l, e, rng)
    assert C is not None
    return C


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([(3, 2, 1), (3, 4, 1), (3, 4, 2), (3, 4, 0)]))
def test_hull_ledger_random(seed, fe):
    p, h, e = fe
    F = make_field(p, h)
    rng = np.random.default_rng(seed)
    n = int(rng.integers(5, 10))
    k = int(rng.integers(2, n - 1))
    l = int(rng.integers(1, min(k, n - k) + 1))
    C = random_hull_code(F, n, k, l, e, rng)
    if C is None:
        return
    s = int(rng.integers(1, l + 1))
    if s < k:
        r = shorten_with_hull(C, e, s)
        assert (r.code.n, r.code.k, hull_dim(r.code, e)) == (n - s, k - s, l - s)
    d = min_distance(C).d
    if s < d:
        r = puncture_with_hull(C, e, s)
        assert (r.code.n, r.code.k, hull_dim(r.code, e)) == (n - s, k, l - s)
        if F.q**k <= 10**4:
            assert brute_min_distance(F, r.code.gen) >= d - s


def test_hull_ledger_shorten_distance_monotone():
    F = make_field(3, 2)
    for seed in range(6):
        C = _ledger_case(F, 7, 3, 2, 1, seed)
        d = brute_min_distance(F, C.gen)
        r = shorten_with_hull(C, 1, 2) if C.k > 2 else None
        if r is not None:
            assert hull_dim(r.code, 1) == 0
            assert brute_min_distance(F, r.code.gen) >= d


def test_asymmetric_e_uses_both_radicals():
    # over GF(81) with e = 1 the left and right radicals need not coincide
    F = make_field(3, 4)
    hits = 0
    for seed in range(30):
        rng = np.random.default_rng(seed)
        C = random_hull_code(F, 8, 4, 2, 1, rng)
        if C is None:
            continue
        R = right_radical(C, 1)
        assert R.rows == 2
        for s in (1, 2):
            r = shorten_with_hull(C, 1, s)
            assert hull_dim(r.code, 1) == 2 - s
            hits += 1
    assert hits


def test_derive_errors(so22):
    F = make_field(3, 4)
    C = _ledger_case(F, 8, 4, 1, 1, 3)
    with pytest.raises(HullTooSmall):
        shorten_with_hull(C, 1, 2)
    with pytest.raises(HullTooSmall):
        puncture_with_hull(C, 1, 2)
    with pytest.raises(InvalidParams):
        derive_so_mds(C, 1, 1)
    with pytest.raises(InvalidParams):
        derive_so_mds(so22, 1, 6)
    with pytest.raises(DistanceBound):
        # two disjoint weight-2 words (1, w) with 1 + w^4 = 0: SO with d = 2
        F9 = make_field(3, 2)
        Z = -1
        G = MatrixGF._wrap(F9, np.array([[0, 1, Z, Z], [Z, Z, 0, 1]]))
        puncture_with_hull(LinearCode(G), 1, 2)
    SO1 = build(ConstructionParams("C", 3, 4, 1, x1=720, x2=780, r1=1, extended=True)).code
    with pytest.raises(EmptyResult):
        shorten_with_hull(SO1, 1, 2)
    assert shorten_with_hull(C, 1, 0).code is C
    assert puncture_with_hull(C, 1, 0).code is C


def test_decompose_properties():
    F = make_field(3, 4)
    for seed in range(8):
        for e in (1, 2):
            C = _ledger_case(F, 10, 4, 2, e, seed)
            for s in (1, 2):
                C1, C2 = decompose(C, e, s)
                assert C1.k == s and is_self_orthogonal(C1, e)
                assert C2.k == C.k - s and hull_dim(C2, e) == 2 - s
                stacked = MatrixGF._wrap(F, np.vstack([C1.gen.data, C2.gen.data]))
                assert rank(stacked) == C.k
                assert C.same_code(type(C).spanned_by(stacked))


def test_decompose_so_code_full(so22):
    C1, C2 = decompose(so22, 1, 6)
    assert C1.same_code(so22) and C2.k == 0
    with pytest.raises(HullTooSmall):
        decompose(so22, 1, 7)


def test_classify_eprime():
    assert {ep for ep in range(8) if classify_eprime(8, ep)[0] == "S1"} == set(range(1, 8))
    assert {ep for ep in range(6) if classify_eprime(6, ep)[0] == "S1"} == {1, 3, 5}
    for h in range(1, 13):
        labels = [classify_eprime(h, ep) for ep in range(h)]
        assert labels[0] == ("S2", h)
        for ep, (lab, g) in enumerate(labels):
            assert lab in ("S1", "S2") and (lab == "S1") == ((h // g) % 2 == 0)
    with pytest.raises(InvalidParams):
        classify_eprime(4, 4)


def test_enumerate_examples():
    tup = enumerate_extended_params(5, 4, 2, ["ii"], {"t": [13]})
    assert [(x.N, x.K) for x in tup] == [(340, 14)]
    tup = enumerate_extended_params(3, 4, 1, ["ii"], {"t": [1]})
    assert [(x.N, x.K) for x in tup] == [(42, 11)]
    # condition i needs (p^e+1) | (t p^(h-2e) + 1)
    ts = [x.raw["t"] for x in enumerate_extended_params(3, 4, 1, ["i"])]
    assert ts == [t for t in range(1, 4) if (t * 9 + 1) % 4 == 0]
    with pytest.raises(InvalidParams):
        enumerate_extended_params(3, 4, 3)


@pytest.mark.parametrize("p,h,e", [(3, 2, 1), (3, 4, 1), (5, 2, 1), (3, 4, 2)])
def test_enumerated_tuples_build(p, h, e):
    tuples = enumerate_extended_params(p, h, e)
    assert tuples
    fam = {"i": "A", "ii": "B", "iii": "C", "iv": "D"}
    for tp in tuples[:40]:
        assert 0 < tp.K < tp.N
        R = build(ConstructionParams(fam[tp.condition], p, h, e, extended=True, **tp.raw),
                  with_code=False)
        assert (R.n, R.k) == (tp.N, tp.K) and R.verdict.result == "Certified"


def test_quantum_rows_come_from_enumeration():
    for row in rows_for("Q1") + rows_for("Q2"):
        q = row.quantum
        tup = enumerate_extended_params(q["p"], q["h"], q["e"], [q["condition"]], q["ranges"])
        assert len(tup) == 1


def test_replay_bit_exact(so22):
    r = derive_hull_mds(so22, 1, 3)
    r2 = shorten_with_hull(r.code, 1, 2)
    D = galois_dual(r2.code, 1)
    for code in (r.code, r2.code):
        again = replay(code.provenance)
        assert np.array_equal(again.gen.data, code.gen.data)
    F = make_field(3, 4)
    C = _ledger_case(F, 10, 4, 2, 1, 0)
    from sogrs.io import with_generator_root
    C = with_generator_root(C)
    C1, C2 = decompose(C, 1, 1)
    assert np.array_equal(replay(C2.provenance).gen.data, C2.gen.data)
    assert D.k == r2.code.n - r2.code.k


def test_random_code_hull_ledger_matches_brute():
    F = make_field(3, 2)
    rng = np.random.default_rng(11)
    for _ in range(10):
        C = random_code(F, 6, 3, rng)
        l = hull_dim(C, 1)
        if l == 0:
            continue
        r = shorten_with_hull(C, 1, 1) if C.k > 1 else None
        if r:
            assert hull_dim(r.code, 1) == l - 1
