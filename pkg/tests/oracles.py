"""Slow, table-free reference implementations used to cross-check the package.

Nothing here imports the arithmetic of ``qdalt``: field products are done by
schoolbook polynomial multiplication, ranks by plain Gaussian elimination on
Python ints, and codes are compared as sets of vectors where that is cheap.
"""

from __future__ import annotations

import itertools


# -- fields --------------------------------------------------------------------

def gf2m_mul(a: int, b: int, poly: int) -> int:
    ell = poly.bit_length() - 1
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a >> ell & 1:
            a ^= poly
    return acc


class RefField:
    """F_q = GF(2)[z]/(poly) and F_{q^2} = F_q[y]/(y^2 + y + delta)."""

    def __init__(self, ell: int, poly: int, delta: int):
        self.ell, self.poly, self.delta = ell, poly, delta
        self.q = 1 << ell
        self.qsq = self.q * self.q

    def bmul(self, a, b):
        return gf2m_mul(a, b, self.poly)

    def mul(self, a: int, b: int) -> int:
        m = self.q - 1
        a0, a1 = a & m, a >> self.ell
        b0, b1 = b & m, b >> self.ell
        # (a0 + a1 y)(b0 + b1 y), y^2 = y + delta
        hi = self.bmul(a1, b1)
        lo = self.bmul(a0, b0) ^ self.bmul(hi, self.delta)
        mid = self.bmul(a0, b1) ^ self.bmul(a1, b0) ^ hi
        return lo | (mid << self.ell)

    def pow(self, a: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError
        return self.pow(a, self.qsq - 2)

    def frob(self, a: int) -> int:
        return self.pow(a, self.q)


# -- linear algebra -------------------------------------------------------------

def ref_rank(rf: RefField, rows) -> int:
    m = [list(map(int, r)) for r in rows]
    if not m:
        return 0
    rank, cols = 0, len(m[0])
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = rf.inv(m[rank][c])
        m[rank] = [rf.mul(inv, v) for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                s = m[i][c]
                m[i] = [v ^ rf.mul(s, w) for v, w in zip(m[i], m[rank])]
        rank += 1
    return rank


def span(rf: RefField, rows, scalars) -> set[tuple[int, ...]]:
    """Every F-combination of ``rows`` (scalars given as an iterable)."""
    rows = [list(map(int, r)) for r in rows]
    n = len(rows[0]) if rows else 0
    out = set()
    for cs in itertools.product(list(scalars), repeat=len(rows)):
        v = [0] * n
        for c, r in zip(cs, rows):
            if c:
                v = [a ^ rf.mul(c, b) for a, b in zip(v, r)]
        out.add(tuple(v))
    return out


def dot(rf: RefField, u, v) -> int:
    acc = 0
    for a, b in zip(u, v):
        acc ^= rf.mul(int(a), int(b))
    return acc


def schur_span_rank(rf: RefField, a_rows, b_rows) -> int:
    prods = [[rf.mul(int(x), int(y)) for x, y in zip(r, s)] for r in a_rows for s in b_rows]
    return ref_rank(rf, prods)


# -- codes ------------------------------------------------------------------------

def ref_alternant_words(rf: RefField, r: int, x, y) -> set[tuple[int, ...]]:
    """All c in F_q^n with sum_i c_i y_i x_i^j = 0 for j < r (exhaustive, tiny n only)."""
    n = len(x)
    checks = [[rf.mul(int(y[i]), rf.pow(int(x[i]), j)) for i in range(n)] for j in range(r)]
    return {c for c in itertools.product(range(rf.q), repeat=n)
            if all(dot(rf, c, h) == 0 for h in checks)}


def ref_conductor_words(rf: RefField, d_rows, c_words: set, n: int) -> set[tuple[int, ...]]:
    """{z in F_q^n : d * z in C for every generator d} by exhaustion."""
    out = set()
    for z in itertools.product(range(rf.q), repeat=n):
        if all(tuple(rf.mul(int(a), b) for a, b in zip(d, z)) in c_words for d in d_rows):
            out.add(z)
    return out
