"""Generalized Reed-Solomon codes, their extensions, and self-orthogonality certificates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from sogrs.codes import LinearCode, Verdict
from sogrs.errors import (
    BadCertificate,
    DegreeMismatch,
    DegreeTooHigh,
    DimensionMismatch,
    DuplicateLocators,
    InvalidParams,
    NotMonic,
)
from sogrs.field import ZERO, FieldContext
from sogrs.linalg import MatrixGF
from sogrs.provenance import DerivationRecord

_U_CHUNK = 1 << 22


def _frozen(arr) -> np.ndarray:
    out = np.array(arr, dtype=np.int64).reshape(-1)
    out[out < 0] = ZERO
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class GrsSpec:
    """GRS_k(a, v), or with ``extended`` the code with an extra column at infinity.

    ``locators`` and ``multipliers`` are log arrays.  The infinity column is
    the unit vector picking the coefficient of x^(k-1).
    """

    field: FieldContext
    locators: np.ndarray
    multipliers: np.ndarray
    k: int
    extended: bool = False

    def __post_init__(self):
        a = _frozen(self.locators)
        v = _frozen(self.multipliers)
        object.__setattr__(self, "locators", a)
        object.__setattr__(self, "multipliers", v)
        if a.size != v.size:
            raise DimensionMismatch(f"{a.size} locators but {v.size} multipliers")
        if np.unique(a).size != a.size:
            raise DuplicateLocators("evaluation points must be distinct")
        if (v < 0).any():
            raise InvalidParams("column multipliers must be nonzero")
        if not 1 <= self.k <= self.length:
            raise InvalidParams(f"dimension k={self.k} outside 1..{self.length}")

    @property
    def n_finite(self) -> int:
        return int(self.locators.size)

    @property
    def length(self) -> int:
        return self.n_finite + int(self.extended)


@dataclass(frozen=True, eq=False)
class CertificatePoly:
    """Certificate (lambda, h): ``coeffs`` are logs, constant term first."""

    coeffs: tuple[int, ...]
    lam: int = 0

    @classmethod
    def monomial(cls, degree: int, lam: int = 0) -> CertificatePoly:
        return cls((ZERO,) * degree + (0,), lam)

    @property
    def degree(self) -> int:
        nz = [i for i, c in enumerate(self.coeffs) if c >= 0]
        return nz[-1] if nz else -1


def poly_eval(F: FieldContext, coeffs, x) -> np.ndarray:
    """Horner evaluation of a log-coefficient polynomial at log points ``x``."""
    x = np.asarray(x, dtype=np.int64)
    acc = np.full(x.shape, ZERO, dtype=np.int64)
    for c in reversed(list(coeffs)):
        acc = F.add(F.mul(acc, x), np.full(x.shape, c, dtype=np.int64))
    return acc


def compute_u(F: FieldContext, locators) -> np.ndarray:
    """u_i = prod_{j != i} (a_i - a_j)^(-1), by direct products (quadratic time)."""
    a = np.asarray(locators, dtype=np.int64)
    n = a.size
    out = np.empty(n, dtype=np.int64)
    rows = max(1, _U_CHUNK // max(n, 1))
    neg_a = F.neg(a)
    for s in range(0, n, rows):
        idx = np.arange(s, min(n, s + rows))
        diff = F.add(a[idx, None], neg_a[None, :])
        diff[np.arange(idx.size), idx] = 0
        if (diff < 0).any():
            raise DuplicateLocators("evaluation points must be distinct")
        out[idx] = (-diff.sum(axis=1)) % F.order
    return out


def generator_matrix(spec: GrsSpec) -> MatrixGF:
    """Rows v_j a_j^i for i < k, plus the infinity column when extended."""
    F = spec.field
    a, v = spec.locators, spec.multipliers
    i = np.arange(spec.k, dtype=np.int64)[:, None]
    G = np.where(a[None, :] < 0, ZERO, (v[None, :] + i * a[None, :]) % F.order)
    if spec.n_finite and (a < 0).any():
        G[0, a < 0] = v[a < 0]
    if spec.extended:
        col = np.full((spec.k, 1), ZERO, dtype=np.int64)
        col[-1, 0] = 0
        G = np.hstack([G, col])
    return MatrixGF._wrap(F, G)


def grs_code(spec: GrsSpec, provenance: DerivationRecord | None = None) -> LinearCode:
    """The code as a LinearCode; full rank and MDS hold for every valid GrsSpec."""
    return LinearCode(generator_matrix(spec), provenance, rank_known=True, mds_reason="grs")


def _certificate_check(spec: GrsSpec, cert: CertificatePoly, e: int, u, sign: int,
                       lam: int) -> Verdict:
    F = spec.field
    a, v = spec.locators, spec.multipliers
    if u is None:
        u = compute_u(F, a)
    u = np.asarray(u, dtype=np.int64)
    if u.shape != a.shape:
        raise DimensionMismatch("u must have one entry per locator")
    rhs = F.pow(v, F.p**e + 1)
    if sign < 0:
        rhs = F.neg(rhs)
    lhs = F.mul(F.mul(u, lam), poly_eval(F, cert.coeffs, a))
    bad = np.flatnonzero(lhs != rhs)
    claim = "so-egrs" if spec.extended else "so-grs"
    detail = {"e": e, "deg_h": cert.degree}
    if bad.size:
        i = int(bad[0])
        detail["mismatches"] = int(bad.size)
        return Verdict(claim, "certificate", "Inconclusive", i, detail)
    return Verdict(claim, "certificate", "Certified", None, detail)


def verify_so_grs(spec: GrsSpec, e: int, cert: CertificatePoly, u=None) -> Verdict:
    """Check lambda u_i h(a_i) = v_i^(p^e+1) with deg h <= n - (p^e+1)k + p^e - 1.

    A pass certifies GRS_k(a, v) is e-Galois self-orthogonal.  ``u`` may be
    supplied in closed form; otherwise it is computed directly.
    """
    if spec.extended:
        raise InvalidParams("use verify_so_egrs for extended codes")
    F = spec.field
    pe = F.p**e
    limit = spec.n_finite - (pe + 1) * spec.k + pe - 1
    if cert.degree > limit:
        raise DegreeTooHigh(f"deg h = {cert.degree} exceeds {limit}")
    if cert.degree < 0:
        raise InvalidParams("certificate polynomial is zero")
    if cert.coeffs[cert.degree] != 0:
        raise NotMonic("certificate polynomial must be monic")
    if cert.lam < 0:
        raise InvalidParams("lambda must be nonzero")
    return _certificate_check(spec, cert, e, u, +1, cert.lam)


def verify_so_egrs(spec: GrsSpec, e: int, cert: CertificatePoly, u=None) -> Verdict:
    """Check -u_i h(a_i) = v_i^(p^e+1) with h monic of degree p^e + n - (p^e+1)k.

    Here n counts the finite locators.  A pass certifies the extended code is
    e-Galois self-orthogonal.
    """
    if not spec.extended:
        raise InvalidParams("use verify_so_grs for codes without the infinity column")
    F = spec.field
    pe = F.p**e
    want = pe + spec.n_finite - (pe + 1) * spec.k
    if cert.degree != want:
        raise DegreeMismatch(f"deg h = {cert.degree}, need exactly {want}")
    if cert.coeffs[want] != 0:
        raise NotMonic("certificate polynomial must be monic")
    if cert.lam != 0:
        raise BadCertificate("lambda must be 1 for extended codes")
    return _certificate_check(spec, cert, e, u, -1, 0)


def _division_coeffs(F: FieldContext, a: np.ndarray) -> np.ndarray:
    """Coefficients (low to high) of M(x) = prod (x - a_j)."""
    M = np.array([0], dtype=np.int64)
    for r in F.neg(a):
        shifted = np.concatenate([[ZERO], M])
        M = F.add(shifted, np.concatenate([F.mul(M, int(r)), [ZERO]]))
    return M


def dual_membership(spec: GrsSpec, e: int, f) -> tuple[bool, np.ndarray]:
    """Whether the codeword of message polynomial ``f`` lies in the e-Galois dual.

    Returns ``(member, g)`` where ``g`` (log coefficients, low first) is the
    interpolant through (a_i, v_i^(p^e'+1) f(a_i)^(p^e') / u_i) with
    e' = h - e, the exponent that matches ``galois_dual``.  Membership is the
    degree bound on g, plus the leading-coefficient match when extended.
    """
    F = spec.field
    if len(f) > spec.k:
        raise DimensionMismatch(f"message of degree >= k={spec.k}")
    f = [int(c) if c >= 0 else ZERO for c in f] + [ZERO] * (spec.k - len(f))
    a, v = spec.locators, spec.multipliers
    n = spec.n_finite
    ep = (F.h - e) % F.h
    cw = F.mul(v, poly_eval(F, f, a))
    w = F.mul(v, F.frob(cw, ep))
    M = _division_coeffs(F, a)
    # g(x) = sum_i w_i M(x)/(x - a_i), so g(a_i) = w_i / u_i
    g = np.full(n, ZERO, dtype=np.int64)
    quot = np.zeros(n, dtype=np.int64)
    for t in range(n - 1, -1, -1):
        g[t] = F.sum(F.mul(w, quot))
        if t:
            quot = F.add(np.full(n, M[t], dtype=np.int64), F.mul(a, quot))
    nz = np.flatnonzero(g >= 0)
    deg = int(nz[-1]) if nz.size else -1
    g = g[: deg + 1]
    if not spec.extended:
        return deg <= n - spec.k - 1, g
    if deg > n - spec.k:
        return False, g
    lead = int(g[n - spec.k]) if 0 <= n - spec.k <= deg else ZERO
    return int(F.frob(f[spec.k - 1], ep)) == int(F.neg(lead)), g
