"""Exact arithmetic in GF(p^h).

Elements are stored by discrete logarithm with respect to a fixed primitive
element ``omega``; zero is the sentinel ``ZERO = -1``.  Multiplication is
index addition modulo ``q - 1`` and addition goes through a Zech table
``zech[d] = log(1 + omega^d)`` built once per field.  Every bulk operation on
:class:`FieldContext` accepts numpy integer arrays of logs so that matrix code
can stay vectorised; :class:`FieldElement` is the scalar, operator-overloaded
view used at the API surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from sogrs._conway import CONWAY
from sogrs.errors import (
    BadSubfield,
    DivisionByZero,
    FieldTooLarge,
    LogOfZero,
    NotAResidue,
    NotPrime,
    ReducibleModulus,
    UnsupportedField,
)

ZERO = -1
DEFAULT_TABLE_CAP = 2**24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


# -- polynomials over GF(p), coefficient lists with constant term first ------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, m, p)


def _ppowmod(a: list[int], k: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(list(a), m, p)
    while k:
        if k & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        k >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(modulus: list[int], p: int) -> bool:
    """Rabin's irreducibility test over GF(p)."""
    f = _trim([c % p for c in modulus])
    h = len(f) - 1
    if h < 1:
        return False
    if h == 1:
        return True
    x = [0, 1]
    if _ppowmod(x, p**h, f, p) != _pmod(x, f, p):
        return False
    for r in prime_factors(h):
        xp = _ppowmod(x, p ** (h // r), f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, _trim(diff), p)
        if len(g) > 1:
            return False
    return True


def _encode(coeffs, p: int) -> int:
    return sum(int(c) * p**i for i, c in enumerate(coeffs))


def _decode(enc: int, p: int, h: int) -> list[int]:
    out = []
    for _ in range(h):
        enc, r = divmod(enc, p)
        out.append(r)
    return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    p: int
    h: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.h

    def to_json(self) -> dict:
        return {"p": self.p, "h": self.h, "modulus": list(self.modulus)}


class FieldContext:
    """A tabulated GF(p^h).

    Attributes of interest: ``exp_enc[i]`` is the integer encoding
    (sum of c_j p^j over the power basis in x) of ``omega^i``; ``log_table``
    inverts it, with ``log_table[0] == ZERO``.
    """

    def __init__(self, spec: FieldSpec, generator: tuple[int, ...]):
        self.spec = spec
        self.p = spec.p
        self.h = spec.h
        self.q = spec.q
        self.order = self.q - 1
        self.modulus = spec.modulus
        self.generator = generator
        self.exp_enc = _tabulate_powers(spec, generator)
        self.log_table = np.full(self.q, ZERO, dtype=np.int64)
        self.log_table[self.exp_enc] = np.arange(self.order, dtype=np.int64)
        digit0 = self.exp_enc % self.p
        one_plus = self.exp_enc - digit0 + (digit0 + 1) % self.p
        self.zech = self.log_table[one_plus]
        self.neg_one = self.order // 2 if self.p != 2 else 0
        self._frob_mult = {e: pow(self.p, e, self.order) if self.order > 1 else 0
                           for e in range(self.h + 1)}
        for arr in (self.exp_enc, self.log_table, self.zech):
            arr.flags.writeable = False

    # -- bookkeeping ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.h})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldContext) and self.spec == other.spec
                and self.generator == other.generator)

    def __hash__(self) -> int:
        return hash((self.spec, self.generator))

    @property
    def omega(self) -> FieldElement:
        return FieldElement(self, 1 % self.order)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, ZERO)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 0)

    def element(self, log: int) -> FieldElement:
        log = int(log)
        return FieldElement(self, ZERO if log < 0 else log % self.order)

    def __call__(self, value: int) -> FieldElement:
        """Embed an integer of the prime field."""
        return self.element(self.from_int(value))

    def from_int(self, value):
        v = np.asarray(value, dtype=np.int64) % self.p
        out = self.log_table[v]
        return int(out) if out.ndim == 0 else out

    def from_encoding(self, enc):
        out = self.log_table[np.asarray(enc, dtype=np.int64)]
        return int(out) if out.ndim == 0 else out

    def to_encoding(self, logs):
        logs = np.asarray(logs, dtype=np.int64)
        out = np.where(logs < 0, 0, self.exp_enc[np.maximum(logs, 0)])
        return int(out) if out.ndim == 0 else out

    def coeffs(self, logs) -> np.ndarray:
        """Coefficient vectors over GF(p), shape ``logs.shape + (h,)``."""
        enc = np.asarray(self.to_encoding(logs), dtype=np.int64)
        powers = self.p ** np.arange(self.h, dtype=np.int64)
        return (enc[..., None] // powers) % self.p

    def elements(self) -> np.ndarray:
        """All elements in canonical order: zero first, then by log."""
        return np.concatenate([[ZERO], np.arange(self.order, dtype=np.int64)])

    # -- vectorised arithmetic on log arrays ---------------------------------

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.where((a < 0) | (b < 0), ZERO, (a + b) % self.order)
        return int(out) if out.ndim == 0 else out

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.ndim == 0 and b.ndim == 0:
            a, b = int(a), int(b)
            if a < 0 or b < 0:
                return b if a < 0 else a
            z = int(self.zech[(b - a) % self.order])
            return ZERO if z < 0 else (a + z) % self.order
        order = self.order
        d = b - a
        d += order * (d < 0)
        z = self.zech[np.clip(d, 0, order - 1)]
        s = a + z
        s -= order * (s >= order)
        s = np.where(z < 0, ZERO, s)
        return np.where(a < 0, b, np.where(b < 0, a, s))

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        out = np.where(a < 0, ZERO, (a + self.neg_one) % self.order)
        return int(out) if out.ndim == 0 else out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a < 0):
            raise DivisionByZero("inverse of zero")
        out = (-a) % self.order
        return int(out) if out.ndim == 0 else out

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        a = np.asarray(a, dtype=np.int64)
        if k < 0 and np.any(a < 0):
            raise DivisionByZero("negative power of zero")
        if k == 0:
            out = np.zeros_like(a)
        else:
            out = np.where(a < 0, ZERO, (a * (k % self.order)) % self.order)
        return int(out) if out.ndim == 0 else out

    def frob(self, a, e: int):
        """sigma^e applied entrywise: x -> x^(p^e)."""
        if not 0 <= e <= self.h:
            raise ValueError(f"Frobenius power e={e} outside 0..{self.h}")
        a = np.asarray(a, dtype=np.int64)
        out = np.where(a < 0, ZERO, (a * self._frob_mult[e]) % self.order)
        return int(out) if out.ndim == 0 else out

    def sum(self, a, axis=-1):
        """Field sum along an axis (pairwise Zech additions)."""
        a = np.moveaxis(np.asarray(a, dtype=np.int64), axis, 0)
        if a.shape[0] == 0:
            acc = np.full(a.shape[1:], ZERO, dtype=np.int64)
            return int(acc) if acc.ndim == 0 else acc
        while a.shape[0] > 1:
            if a.shape[0] % 2:
                a = np.concatenate([a, np.full((1,) + a.shape[1:], ZERO, dtype=np.int64)])
            a = self.add(a[0::2], a[1::2])
        acc = a[0]
        return int(acc) if np.ndim(acc) == 0 else acc

    def prod(self, a, axis=-1):
        a = np.asarray(a, dtype=np.int64)
        anyzero = (a < 0).any(axis=axis)
        out = np.where(anyzero, ZERO, a.clip(min=0).sum(axis=axis) % self.order)
        return int(out) if np.ndim(out) == 0 else out

    def in_subfield(self, a, e: int):
        """Membership in GF(p^e) (requires e | h)."""
        self._check_divisor(e)
        step = self.order // (self.p**e - 1)
        a = np.asarray(a, dtype=np.int64)
        out = (a < 0) | (a % step == 0)
        return bool(out) if out.ndim == 0 else out

    def _check_divisor(self, e: int) -> None:
        if e < 1 or self.h % e:
            raise BadSubfield(f"e={e} does not divide h={self.h}")

    def trace_logs(self, a, e: int):
        self._check_divisor(e)
        acc = np.full(np.shape(a), ZERO, dtype=np.int64)
        for i in range(self.h // e):
            acc = self.add(acc, self.frob(a, i * e))
        return int(acc) if np.ndim(acc) == 0 else acc

    def norm_logs(self, a, e: int):
        self._check_divisor(e)
        return self.pow(a, self.order // (self.p**e - 1))

    def residue_degree(self, e: int) -> int:
        """d = gcd(p^e + 1, q - 1); E is the subgroup of index d."""
        return math.gcd(self.p**e + 1, self.order)

    def is_residue_logs(self, a, e: int):
        d = self.residue_degree(e)
        a = np.asarray(a, dtype=np.int64)
        if np.any(a < 0):
            raise LogOfZero("residue test of zero")
        out = a % d == 0
        return bool(out) if out.ndim == 0 else out

    def root_logs(self, a, e: int):
        """Smallest-exponent solution s of (p^e + 1) s = log(a) mod q - 1."""
        a = np.asarray(a, dtype=np.int64)
        if not np.all(self.is_residue_logs(a, e)):
            raise NotAResidue(f"not a (p^{e}+1)-th power")
        d = self.residue_degree(e)
        mod = self.order // d
        if mod == 1:
            out = np.zeros_like(a)
        else:
            inv = pow(((self.p**e + 1) // d) % mod, -1, mod)
            out = ((a // d) % mod * inv) % mod
        return int(out) if out.ndim == 0 else out


def _mul_matrix(spec: FieldSpec, alpha: list[int]) -> np.ndarray:
    """Matrix of y -> alpha*y on coefficient column vectors."""
    p, h, m = spec.p, spec.h, list(spec.modulus)
    cols = []
    for j in range(h):
        basis = [0] * j + [1]
        prod = _pmulmod(alpha, basis, m, p) if alpha else []
        cols.append(prod + [0] * (h - len(prod)))
    return np.array(cols, dtype=np.int64).T


def _tabulate_powers(spec: FieldSpec, generator) -> np.ndarray:
    p, h = spec.p, spec.h
    order = spec.q - 1
    m = list(spec.modulus)
    # block doubling: powers[L:2L] = powers[:L] * g^L
    first = _pmod(list(generator), m, p) or [0]
    rows = np.zeros((1, h), dtype=np.int64)
    rows[0, 0] = 1
    mat_g = _mul_matrix(spec, first)
    gL = first
    while rows.shape[0] < order:
        mat = _mul_matrix(spec, gL) if rows.shape[0] > 1 else mat_g
        nxt = (rows @ mat.T) % p
        rows = np.concatenate([rows, nxt])[:order]
        gL = _pmulmod(gL, gL, m, p)
    powers = p ** np.arange(h, dtype=np.int64)
    enc = rows @ powers
    if order > 1 and np.unique(enc).size != order:
        raise ValueError("generator is not primitive")
    return enc


def _element_order_is_full(g: list[int], m: list[int], p: int, order: int) -> bool:
    if not _trim(list(g)):
        return False
    for r in prime_factors(order):
        if _ppowmod(g, order // r, m, p) == [1]:
            return False
    return _ppowmod(g, order, m, p) == [1]


@lru_cache(maxsize=32)
def _make_field_cached(p: int, h: int, modulus: tuple[int, ...] | None,
                       cap: int) -> FieldContext:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if h < 1:
        raise ValueError("extension degree must be >= 1")
    if p**h - 1 > cap:
        raise FieldTooLarge(f"q - 1 = {p**h - 1} exceeds the table cap {cap}")
    conway = modulus is None
    if conway:
        if (p, h) not in CONWAY:
            raise UnsupportedField(
                f"no embedded Conway polynomial for GF({p}^{h}); pass a modulus")
        modulus = CONWAY[(p, h)]
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != h + 1 or modulus[-1] != 1:
        raise ValueError(f"modulus must be monic of degree {h}")
    if not is_irreducible(list(modulus), p):
        raise ReducibleModulus(f"{modulus} is reducible over GF({p})")
    spec = FieldSpec(p, h, modulus)
    order = p**h - 1
    m = list(modulus)
    x = [0, 1] if h > 1 else _pmod([0, 1], m, p)
    if _element_order_is_full(x, m, p, order):
        gen = x
    else:
        if conway:
            raise ValueError(f"embedded polynomial for GF({p}^{h}) is not primitive")
        gen = None
        for enc in range(2, p**h):
            cand = _trim(_decode(enc, p, h))
            if _element_order_is_full(cand, m, p, order):
                gen = cand
                break
        if gen is None:  # q == 2
            gen = [1]
    return FieldContext(spec, tuple(gen))


def make_field(p: int, h: int, modulus=None, cap: int = DEFAULT_TABLE_CAP) -> FieldContext:
    """Build (or fetch from cache) the tabulated field GF(p^h)."""
    mod = None if modulus is None else tuple(int(c) for c in modulus)
    return _make_field_cached(int(p), int(h), mod, int(cap))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldElement:
    ctx: FieldContext = dc_field(repr=False, compare=False)
    log: int

    def _lift(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ValueError("elements from different fields")
            return other
        if isinstance(other, (int, np.integer)):
            return self.ctx(int(other))
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, np.integer)):
            other = self.ctx(int(other))
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.log == other.log and self.ctx == other.ctx

    def __hash__(self) -> int:
        return hash((self.log, self.ctx.q))

    def __bool__(self) -> bool:
        return self.log != ZERO

    @property
    def is_zero(self) -> bool:
        return self.log == ZERO

    @property
    def coeffs(self) -> list[int]:
        return [int(c) for c in self.ctx.coeffs(self.log)]

    @property
    def encoding(self) -> int:
        return self.ctx.to_encoding(self.log)

    def __repr__(self) -> str:
        return "0" if self.log == ZERO else f"w^{self.log}"

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.ctx, self.ctx.add(self.log, other.log))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.ctx, self.ctx.sub(self.log, other.log))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.ctx, self.ctx.mul(self.log, other.log))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.ctx, self.ctx.div(self.log, other.log))

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.log))

    def __pow__(self, k: int):
        return FieldElement(self.ctx, self.ctx.pow(self.log, int(k)))

    def inverse(self) -> FieldElement:
        return FieldElement(self.ctx, self.ctx.inv(self.log))


def arith(x: FieldElement, y: FieldElement | int | None, kind: str) -> FieldElement:
    """Dispatch one of add|sub|mul|div|neg|inv|pow (``y`` is the exponent for pow)."""
    if kind == "add":
        return x + y
    if kind == "sub":
        return x - y
    if kind == "mul":
        return x * y
    if kind == "div":
        return x / y
    if kind == "neg":
        return -x
    if kind == "inv":
        return x.inverse()
    if kind == "pow":
        return x ** int(y)
    raise ValueError(f"unknown operation {kind!r}")


def frobenius(x: FieldElement, e: int) -> FieldElement:
    return FieldElement(x.ctx, x.ctx.frob(x.log, e))


def trace_to(x: FieldElement, e: int) -> FieldElement:
    return FieldElement(x.ctx, x.ctx.trace_logs(x.log, e))


def norm_to(x: FieldElement, e: int) -> FieldElement:
    return FieldElement(x.ctx, x.ctx.norm_logs(x.log, e))


def discrete_log(x: FieldElement) -> int:
    if x.is_zero:
        raise LogOfZero("discrete log of zero")
    return x.log


def is_power_residue(u: FieldElement, e: int) -> bool:
    return u.ctx.is_residue_logs(u.log, e)


def galois_root(u: FieldElement, e: int) -> FieldElement:
    """The v = omega^s with least s >= 0 such that v^(p^e + 1) = u."""
    if u.is_zero:
        raise NotAResidue("zero has no multiplicative root")
    return FieldElement(u.ctx, u.ctx.root_logs(u.log, e))
