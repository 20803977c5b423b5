"""Arithmetic in F_q = GF(2^ell) and its quadratic extension F_{q^2}.

F_q is represented in the polynomial basis of ``base_poly``; F_{q^2} is built
as F_q[y] / (y^2 + y + delta).  An element u + v*y (u, v in F_q) is stored as
the integer ``u | (v << ell)``, so F_q sits inside F_{q^2} as the integers
below q and addition is XOR at both levels.  The extension generator y is the
distinguished element alpha: its conjugate is y + 1, hence Tr(alpha) = 1.

All array operations accept numpy integer arrays (or scalars) and return
``uint16`` arrays; scalar helpers return plain ints.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import FieldRangeError, ZeroInverse

ELEM = np.uint16

BASE = "base"
EXT = "ext"


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _polymod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division over GF(2); ``poly`` is a bit vector (bit i = z^i)."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for cand in range(1 << d, 1 << (d + 1)):
            if _polymod(poly, cand) == 0:
                return False
    return True


def smallest_irreducible(ell: int) -> int:
    for cand in range(1 << ell, 1 << (ell + 1)):
        if is_irreducible(cand):
            return cand
    raise AssertionError("unreachable")  # pragma: no cover


def _base_mul(a: int, b: int, poly: int) -> int:
    return _polymod(_clmul(a, b), poly)


def _abs_trace(a: int, ell: int, poly: int) -> int:
    t, p = 0, a
    for _ in range(ell):
        t ^= p
        p = _base_mul(p, p, poly)
    return t


def _ext_mul(a: int, b: int, ell: int, poly: int, delta: int) -> int:
    mask = (1 << ell) - 1
    u1, v1 = a & mask, a >> ell
    u2, v2 = b & mask, b >> ell
    vv = _base_mul(v1, v2, poly)
    u = _base_mul(u1, u2, poly) ^ _base_mul(vv, delta, poly)
    v = _base_mul(u1, v2, poly) ^ _base_mul(u2, v1, poly) ^ vv
    return u | (v << ell)


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _ext_pow(a: int, e: int, ell: int, poly: int, delta: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = _ext_mul(r, a, ell, poly, delta)
        a = _ext_mul(a, a, ell, poly, delta)
        e >>= 1
    return r


def _build_tables(ell: int, poly: int, delta: int) -> tuple[np.ndarray, np.ndarray]:
    Q = 1 << (2 * ell)
    order = Q - 1
    factors = _prime_factors(order)
    g = 2
    while any(_ext_pow(g, order // p, ell, poly, delta) == 1 for p in factors):
        g += 1
    powers = np.empty(order, dtype=np.int64)
    cur = 1
    for i in range(order):
        powers[i] = cur
        cur = _ext_mul(cur, g, ell, poly, delta)
    log = np.empty(Q, dtype=np.int64)
    log[powers] = np.arange(order)
    # zero maps to a sentinel whose sums always land in the zero tail of exp
    log[0] = 2 * order
    exp = np.zeros(4 * order + 1, dtype=ELEM)
    exp[:order] = powers
    exp[order : 2 * order] = powers
    return log, exp


def _load_tables(ell: int, poly: int, delta: int) -> tuple[np.ndarray, np.ndarray]:
    cache_dir = os.environ.get("QDALT_TABLE_DIR")
    if not cache_dir:
        return _build_tables(ell, poly, delta)
    path = Path(cache_dir) / f"gf2_{ell}_{poly:x}_{delta:x}.npz"
    if path.exists():
        with np.load(path) as data:
            return data["log"], data["exp"]
    log, exp = _build_tables(ell, poly, delta)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savez(path, log=log, exp=exp)
    except OSError:
        pass
    return log, exp


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(2^ell) together with its quadratic extension y^2 + y + ext_delta."""

    ell: int
    base_poly: int
    ext_delta: int
    log: np.ndarray = dc_field(repr=False)
    exp: np.ndarray = dc_field(repr=False)

    @property
    def q(self) -> int:
        return 1 << self.ell

    @property
    def qsq(self) -> int:
        return 1 << (2 * self.ell)

    @property
    def order(self) -> int:
        """Order of the multiplicative group of F_{q^2}."""
        return self.qsq - 1

    @property
    def alpha(self) -> int:
        return self.q

    def key(self) -> tuple[int, int, int]:
        return (self.ell, self.base_poly, self.ext_delta)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    # -- vectorised arithmetic -------------------------------------------
    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a)
        b = np.asarray(b)
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroInverse("0 has no inverse")
        return self.exp[self.order - self.log[a]]

    def div(self, a, b) -> np.ndarray:
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int) -> np.ndarray:
        a = np.asarray(a)
        if e == 0:
            return np.ones(a.shape, dtype=ELEM)
        la = self.log[a]
        out = self.exp[(la * e) % self.order]
        return np.where(a == 0, 0, out).astype(ELEM)

    def frobenius(self, a) -> np.ndarray:
        a = np.asarray(a).astype(ELEM)
        return a ^ (a >> self.ell)

    def trace(self, a) -> np.ndarray:
        """Tr(a) = a + a^q, which is the alpha-coordinate of a."""
        return (np.asarray(a).astype(ELEM) >> self.ell).astype(ELEM)

    def norm(self, a) -> np.ndarray:
        return self.mul(a, self.frobenius(a))

    def in_subfield(self, a) -> np.ndarray:
        return np.asarray(a) < self.q

    def split(self, a) -> tuple[np.ndarray, np.ndarray]:
        """Coordinates (u, v) of a = u + alpha*v."""
        a = np.asarray(a).astype(ELEM)
        return a & ELEM(self.q - 1), a >> self.ell

    def join(self, u, v) -> np.ndarray:
        return (np.asarray(u).astype(ELEM) | (np.asarray(v).astype(ELEM) << self.ell)).astype(ELEM)

    def random(self, rng: np.random.Generator, size=None, *, level: str = EXT, nonzero: bool = False):
        hi = self.q if level == BASE else self.qsq
        lo = 1 if nonzero else 0
        return rng.integers(lo, hi, size=size).astype(ELEM)

    def element(self, value: int, level: str | None = None) -> "FieldElement":
        if level is None:
            level = BASE if value < self.q else EXT
        return FieldElement(self, int(value), level)

    # -- serialisation ----------------------------------------------------
    def to_dict(self) -> dict:
        return {"ell": self.ell, "base_poly": self.base_poly, "ext_delta": f"{self.ext_delta:x}"}

    def describe(self) -> str:
        return f"ell={self.ell} base_poly={self.base_poly} ext_delta={self.ext_delta:x}"


@dataclass(frozen=True)
class FieldElement:
    """Scalar convenience wrapper.  ``level`` is BASE only if asserted in F_q."""

    field: FieldSpec = dc_field(repr=False, compare=False)
    value: int
    level: str = EXT

    def __post_init__(self):
        if not 0 <= self.value < self.field.qsq:
            raise FieldRangeError(f"{self.value} is not an element of GF({self.field.qsq})")
        if self.level == BASE and self.value >= self.field.q:
            raise FieldRangeError(f"{self.value:x} is not in the base field")

    def _lvl(self, other: "FieldElement") -> str:
        return BASE if self.level == BASE and other.level == BASE else EXT

    def __add__(self, other):
        return FieldElement(self.field, self.value ^ other.value, self._lvl(other))

    __sub__ = __add__

    def __mul__(self, other):
        return FieldElement(self.field, int(self.field.mul(self.value, other.value)), self._lvl(other))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, int(self.field.inv(self.value)), self.level)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.field, int(self.field.pow(self.value, e)), self.level)

    def frobenius(self) -> "FieldElement":
        return FieldElement(self.field, int(self.field.frobenius(self.value)), self.level)

    def trace(self) -> "FieldElement":
        return FieldElement(self.field, int(self.field.trace(self.value)), BASE)

    def norm(self) -> "FieldElement":
        return FieldElement(self.field, int(self.field.norm(self.value)), BASE)

    def in_subfield(self) -> bool:
        return self.value < self.field.q

    def __int__(self):
        return self.value

    def hex(self) -> str:
        return f"{self.value:x}"


def field_spec(ell: int, base_poly: int, ext_delta: int) -> FieldSpec:
    """Build (and validate) a field from explicit parameters."""
    if not 2 <= ell <= 8:
        raise FieldRangeError(f"ell must lie in [2, 8], got {ell}")
    if base_poly.bit_length() - 1 != ell or not is_irreducible(base_poly):
        raise FieldRangeError(f"{base_poly} is not an irreducible polynomial of degree {ell}")
    if not 0 <= ext_delta < (1 << ell) or _abs_trace(ext_delta, ell, base_poly) != 1:
        raise FieldRangeError(f"y^2 + y + {ext_delta:x} is not irreducible over GF(2^{ell})")
    return _cached_field(ell, base_poly, ext_delta)


@lru_cache(maxsize=None)
def _cached_field(ell: int, base_poly: int, ext_delta: int) -> FieldSpec:
    log, exp = _load_tables(ell, base_poly, ext_delta)
    log.setflags(write=False)
    exp.setflags(write=False)
    return FieldSpec(ell, base_poly, ext_delta, log, exp)


def make_field(ell: int) -> FieldSpec:
    """Canonical field for ``ell``: smallest irreducible, smallest trace-1 delta."""
    if not isinstance(ell, (int, np.integer)) or not 2 <= ell <= 8:
        raise FieldRangeError(f"ell must lie in [2, 8], got {ell}")
    ell = int(ell)
    poly = smallest_irreducible(ell)
    delta = next(d for d in range(1, 1 << ell) if _abs_trace(d, ell, poly) == 1)
    return field_spec(ell, poly, delta)


def field_mul(f: FieldSpec, a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_inv(f: FieldSpec, a: FieldElement) -> FieldElement:
    return a.inverse()


def frobenius(f: FieldSpec, a: FieldElement) -> FieldElement:
    return a.frobenius()


def trace2(f: FieldSpec, a: FieldElement) -> FieldElement:
    return a.trace()


def norm2(f: FieldSpec, a: FieldElement) -> FieldElement:
    return a.norm()


def in_subfield(f: FieldSpec, a: FieldElement) -> bool:
    return a.in_subfield()


def alpha_unit_trace(f: FieldSpec) -> FieldElement:
    return FieldElement(f, f.alpha, EXT)


def to_hex(values) -> str:
    return " ".join(f"{int(v):x}" for v in np.ravel(values))


def from_hex(tokens) -> np.ndarray:
    return np.array([int(t, 16) for t in tokens], dtype=ELEM)
