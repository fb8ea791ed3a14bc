"""Four families of e-Galois self-orthogonal (extended) GRS codes.

Each family picks locators as a union of fibers (trace fibers, norm fibers,
or cosets of a multiplicative subgroup), has a closed-form expression for
u_i = prod_{j != i} (a_i - a_j)^(-1), and solves v_i^(p^e+1) = target_i for
the column multipliers.  The family's certificate polynomial then proves
self-orthogonality.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from sogrs.codes import LinearCode, Verdict
from sogrs.errors import CosetCollision, InvalidParams
from sogrs.field import ZERO, FieldContext, make_field
from sogrs.grs import (
    CertificatePoly,
    GrsSpec,
    grs_code,
    verify_so_egrs,
    verify_so_grs,
)
from sogrs.provenance import DerivationRecord

FAMILIES = ("A", "B", "C", "D")
_DIRECT_U_LIMIT = 1 << 26

_FAMILY_FIELDS = {"A": ("t",), "B": ("t",), "C": ("x1", "x2", "r1"), "D": ("m", "r")}


@dataclass(frozen=True)
class ConstructionParams:
    family: str
    p: int
    h: int
    e: int
    k: int | None = None
    extended: bool = False
    t: int | None = None
    x1: int | None = None
    x2: int | None = None
    r1: int | None = None
    m: int | None = None
    r: int | None = None

    @property
    def q(self) -> int:
        return self.p**self.h

    @property
    def pe(self) -> int:
        return self.p**self.e

    def to_json(self) -> dict:
        return {key: val for key, val in asdict(self).items() if val is not None}

    @classmethod
    def from_json(cls, obj: dict) -> ConstructionParams:
        known = set(cls.__dataclass_fields__)
        extra = set(obj) - known
        if extra:
            raise InvalidParams(f"unknown construction fields {sorted(extra)}")
        return cls(**obj)

    def with_k(self, k: int | None) -> ConstructionParams:
        return ConstructionParams(**{**asdict(self), "k": k})

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise InvalidParams(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.p % 2 == 0:
            raise InvalidParams("p must be an odd prime")
        if self.e < 1 or self.h % (2 * self.e):
            raise InvalidParams(f"need 2e | h; got e={self.e}, h={self.h}")
        for name in _FAMILY_FIELDS[self.family]:
            if getattr(self, name) is None:
                raise InvalidParams(f"family {self.family} requires --{name}")
        getattr(_Family, f"check_{self.family}")(self)


@dataclass(frozen=True, eq=False)
class Layout:
    """Locators (logs) and the 0-based fiber index of each; -1 marks the point 0."""

    locators: np.ndarray
    fiber: np.ndarray


@dataclass(frozen=True, eq=False)
class ConstructionResult:
    params: ConstructionParams
    spec: GrsSpec
    cert: CertificatePoly
    u: np.ndarray
    layout: Layout
    verdict: Verdict
    code: LinearCode | None

    @property
    def n(self) -> int:
        return self.spec.length

    @property
    def k(self) -> int:
        return self.spec.k


class _Family:
    """Parameter arithmetic shared by validation and parameters-only checks."""

    @staticmethod
    def y(P: ConstructionParams) -> int:
        return (P.q - 1) // (P.pe - 1)

    @staticmethod
    def check_A(P):
        if not 1 <= P.t <= P.pe:
            raise InvalidParams(f"A needs 1 <= t <= p^e = {P.pe}")
        if P.extended and (P.t * P.p ** (P.h - 2 * P.e) + 1) % (P.pe + 1):
            raise InvalidParams("extended A needs (p^e+1) | (t p^(h-2e) + 1)")

    @staticmethod
    def check_B(P):
        if not 1 <= P.t <= P.pe - 1:
            raise InvalidParams(f"B needs 1 <= t <= p^e - 1 = {P.pe - 1}")

    @staticmethod
    def c_orders(P) -> tuple[int, int]:
        q1 = P.q - 1
        return q1 // math.gcd(q1, P.x1), q1 // math.gcd(q1, P.x2)

    @staticmethod
    def check_C(P):
        q1 = P.q - 1
        if P.x1 < 1 or P.x2 < 1:
            raise InvalidParams("C needs positive exponents x1, x2")
        if math.lcm(P.x1, P.x2) % q1:
            raise InvalidParams("C needs (q-1) | lcm(x1, x2)")
        if (P.x1 * (P.pe - 1)) % math.gcd(P.x2, q1):
            raise InvalidParams("C needs gcd(x2, q-1) | x1 (p^e - 1)")
        ord1, r2 = _Family.c_orders(P)
        if not 1 <= P.r1 <= ord1:
            raise InvalidParams(f"C needs 1 <= r1 <= ord(xi1) = {ord1}")
        if P.extended and (P.r1 * r2) % (P.pe + 1):
            raise InvalidParams(f"extended C needs (p^e+1) | n = {P.r1 * r2}")

    @staticmethod
    def d_parts(P) -> tuple[int, int]:
        m2 = math.gcd(P.m, _Family.y(P))
        return P.m // m2, m2

    @staticmethod
    def check_D(P):
        if P.m < 1 or (P.q - 1) % P.m:
            raise InvalidParams("D needs m | q-1")
        m1, _ = _Family.d_parts(P)
        bound = (P.pe - 1) // m1
        if not 1 <= P.r <= bound:
            raise InvalidParams(f"D needs 1 <= r <= (p^e-1)/m1 = {bound}")
        if P.extended and (P.r * P.m) % (P.pe + 1):
            raise InvalidParams(f"extended D needs (p^e+1) | n = {P.r * P.m}")


def base_length(P: ConstructionParams) -> int:
    """Number of nonzero fiber points (before any appended 0 or infinity)."""
    if P.family == "A":
        return P.t * P.p ** (P.h - P.e)
    if P.family == "B":
        return P.t * _Family.y(P)
    if P.family == "C":
        return P.r1 * _Family.c_orders(P)[1]
    return P.r * P.m


def code_length(P: ConstructionParams) -> int:
    n = base_length(P)
    if not P.extended:
        return n
    return n + 1 if P.family == "A" else n + 2


def k_bound(P: ConstructionParams) -> int:
    """Largest admissible k (the mandated k for extended families)."""
    P.validate()
    pe, n = P.pe, base_length(P)
    if P.family == "A":
        s = P.t * P.p ** (P.h - 2 * P.e) + 1
        return pe * s // (pe + 1) if P.extended else (pe * s - 1) // (pe + 1)
    if P.family == "B":
        per = (P.q - 1) // (pe * pe - 1)
        return P.t * per + 1 if P.extended else (P.t - 1) * per
    if P.extended:
        return n // (pe + 1) + 1
    if P.family == "C":
        r2 = _Family.c_orders(P)[1]
        return (pe + r2 * (P.r1 - 1)) // (pe + 1)
    return (pe + P.m * (P.r - 1)) // (pe + 1)


def resolve_k(P: ConstructionParams) -> int:
    kmax = k_bound(P)
    if P.extended:
        if P.k is not None and P.k != kmax:
            raise InvalidParams(f"extended family {P.family} fixes k = {kmax}, got {P.k}")
        return kmax
    if kmax < 1:
        raise InvalidParams(f"family {P.family} admits no k >= 1 for these parameters")
    if P.k is None:
        return kmax
    if P.k > kmax:
        raise InvalidParams(f"k exceeds bound {kmax} (got k = {P.k}, family {P.family})")
    if P.k < 1:
        raise InvalidParams(f"k must be at least 1, got {P.k}")
    return P.k


def predicted_parameters(P: ConstructionParams) -> tuple[int, int, int]:
    """[n, k, n-k+1] by pure arithmetic, without touching the field."""
    n, k = code_length(P), resolve_k(P)
    return n, k, n - k + 1


# -- locators --------------------------------------------------------------


def _subfield_logs(F: FieldContext, e: int) -> np.ndarray:
    step = F.order // (F.p**e - 1)
    return np.arange(F.p**e - 1, dtype=np.int64) * step


def _locators_A(F, P):
    b = np.concatenate([[ZERO], _subfield_logs(F, P.e)])[: P.t]
    elems = F.elements()
    tr = F.trace_logs(elems, P.e)
    locs, fib = [], []
    for s, bs in enumerate(b):
        pts = elems[tr == bs]
        locs.append(pts)
        fib.append(np.full(pts.size, s, dtype=np.int64))
    return np.concatenate(locs), np.concatenate(fib), b


def _locators_B(F, P):
    period = P.pe - 1
    j = np.arange(F.order, dtype=np.int64)
    locs, fib = [], []
    for s in range(P.t):
        pts = j[j % period == s]
        locs.append(pts)
        fib.append(np.full(pts.size, s, dtype=np.int64))
    b = _Family.y(P) * np.arange(P.t, dtype=np.int64) % F.order
    return np.concatenate(locs), np.concatenate(fib), b


def _locators_C(F, P):
    _, r2 = _Family.c_orders(P)
    xi1, xi2 = P.x1 % F.order, P.x2 % F.order
    i = np.arange(1, P.r1 + 1, dtype=np.int64)[:, None]
    j = np.arange(1, r2 + 1, dtype=np.int64)[None, :]
    locs = ((i * xi1 + j * xi2) % F.order).reshape(-1)
    if np.unique(locs).size != locs.size:
        raise CosetCollision("the cosets xi1^i <xi2> are not pairwise disjoint")
    fib = np.repeat(np.arange(P.r1, dtype=np.int64), r2)
    return locs, fib, None


def _d_generators(F, P):
    _, m2 = _Family.d_parts(P)
    th1 = (F.order // P.m) % F.order
    th2 = (_Family.y(P) // m2) % F.order
    return th1, th2


def _locators_D(F, P):
    th1, th2 = _d_generators(F, P)
    eta = (np.arange(1, P.r + 1, dtype=np.int64) * th2) % F.order
    j = np.arange(1, P.m + 1, dtype=np.int64)
    locs = ((eta[:, None] + j[None, :] * th1) % F.order).reshape(-1)
    if np.unique(locs).size != locs.size:
        raise CosetCollision("the cosets eta_i H are not pairwise disjoint")
    fib = np.repeat(np.arange(P.r, dtype=np.int64), P.m)
    return locs, fib, eta


def _raw_locators(F, P):
    return {"A": _locators_A, "B": _locators_B, "C": _locators_C, "D": _locators_D}[
        P.family](F, P)


def _appends_zero(P: ConstructionParams) -> bool:
    return P.extended and P.family != "A"


def locators(P: ConstructionParams, F: FieldContext | None = None) -> Layout:
    """Locator logs in canonical order, with the fiber index of each point."""
    P.validate()
    F = F or make_field(P.p, P.h)
    locs, fib, _ = _raw_locators(F, P)
    if _appends_zero(P):
        locs = np.concatenate([locs, [ZERO]])
        fib = np.concatenate([fib, [-1]])
    return Layout(locs, fib)


# -- closed-form u ---------------------------------------------------------


def _pairwise_factor(F: FieldContext, vals: np.ndarray) -> np.ndarray:
    """c_s = prod_{s' != s} (vals_s - vals_s')^(-1), for a short vector."""
    out = np.empty(vals.size, dtype=np.int64)
    for s in range(vals.size):
        others = np.delete(vals, s)
        diffs = F.sub(np.full(others.size, vals[s]), others)
        out[s] = (-int(np.sum(diffs))) % F.order if others.size else 0
    return out


def closed_form_u(P: ConstructionParams, F: FieldContext | None = None,
                  layout: Layout | None = None) -> np.ndarray:
    """u_i for the family's locators, without the quadratic product."""
    P.validate()
    F = F or make_field(P.p, P.h)
    locs, fib, extra = _raw_locators(F, P)
    o = F.order
    if P.family == "A":
        u = _pairwise_factor(F, extra)[fib]
    elif P.family == "B":
        y = _Family.y(P)
        u = ((1 - y) * locs + _pairwise_factor(F, extra)[fib]) % o
    elif P.family == "C":
        _, r2 = _Family.c_orders(P)
        xi1 = P.x1 % o
        s = np.arange(1, P.r1 + 1, dtype=np.int64)
        pw = (s * r2 * xi1) % o
        c = _pairwise_factor(F, pw)
        inv_r2 = F.inv(F.from_int(r2))
        u = (locs - pw[fib] + inv_r2 + c[fib]) % o
    else:
        eta = extra
        pw = (eta * P.m) % o
        c = _pairwise_factor(F, pw)
        inv_m = F.inv(F.from_int(P.m))
        u = (locs - pw[fib] + inv_m + c[fib]) % o
    if not _appends_zero(P):
        return u
    n = locs.size
    u = (u - locs) % o
    sign = n
    if P.family == "B":
        y = _Family.y(P)
        sign += P.t * (y - 1)
        zero_u = (-int(np.sum(extra))) % o
    elif P.family == "C":
        _, r2 = _Family.c_orders(P)
        r1 = P.r1
        zero_u = (-(P.x1 % o) * (r1 * r2 * (r1 + 1) // 2)
                  + (P.x2 % o) * (r1 * r2 * (r2 + 1) // 2)) % o
    else:
        th1, _ = _d_generators(F, P)
        zero_u = (-th1 * (P.r * P.m * (P.m + 1) // 2) - P.m * int(np.sum(extra))) % o
    if sign % 2:
        zero_u = F.neg(zero_u)
    return np.concatenate([u, [zero_u]])


# -- build -----------------------------------------------------------------


def _cert_degree(P: ConstructionParams) -> int:
    if P.extended or P.family == "A":
        return 0
    if P.family == "B":
        return _Family.y(P) - 1
    if P.family == "C":
        return _Family.c_orders(P)[1] - 1
    return P.m - 1


def residue_element(P: ConstructionParams, F: FieldContext, locs: np.ndarray,
                    u: np.ndarray) -> np.ndarray:
    """The element shown to lie in GF(p^e)^* for every coordinate."""
    exp = _cert_degree(P)
    return u if exp == 0 else F.mul(F.pow(locs, exp), u)


def certificate(P: ConstructionParams) -> CertificatePoly:
    return CertificatePoly.monomial(_cert_degree(P))


def build(P: ConstructionParams, with_code: bool = True) -> ConstructionResult:
    """Locators, closed-form u, multipliers, certificate check and (optionally) the code.

    The certificate is checked against directly computed u_i when n is small
    enough for the quadratic product, otherwise against the closed form.
    """
    P.validate()
    k = resolve_k(P)
    F = make_field(P.p, P.h)
    layout = locators(P, F)
    u = closed_form_u(P, F)
    target = residue_element(P, F, layout.locators, u)
    if P.extended:
        target = F.neg(target)
    v = F.root_logs(target, P.e)
    spec = GrsSpec(F, layout.locators, v, k, extended=P.extended)
    cert = certificate(P)
    n_fin = spec.n_finite
    u_check = None if n_fin * n_fin <= _DIRECT_U_LIMIT else u
    verify = verify_so_egrs if P.extended else verify_so_grs
    verdict = verify(spec, P.e, cert, u=u_check)
    verdict = Verdict(verdict.claim, verdict.mode, verdict.result, verdict.witness,
                      {**verdict.detail, "u": "direct" if u_check is None else "closed-form"})
    root = {"construction": P.with_k(k).to_json(), "field": F.spec.to_json()}
    code = grs_code(spec, DerivationRecord(root)) if with_code else None
    return ConstructionResult(P.with_k(k), spec, cert, u, layout, verdict, code)


__all__ = [
    "FAMILIES", "ConstructionParams", "ConstructionResult", "Layout", "base_length",
    "build", "certificate", "closed_form_u", "code_length", "k_bound", "locators", "predicted_parameters", "resolve_k", "residue_element",
]
