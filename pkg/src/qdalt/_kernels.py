"""Compiled inner loops for dense elimination over GF(2^m).

Elements are uint16; ``log``/``exp`` are the tables of :class:`FieldSpec`
(log[0] is a sentinel that indexes the zero tail of exp), so a product is
``exp[log[a] + log[b]]`` with no branch on zero.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def rref_inplace(a, log, exp, order, reduced):
    """Row-reduce ``a`` in place; returns (rank, pivot columns).

    With ``reduced`` false only entries below pivots are cleared (echelon
    form), which is enough for rank computations.
    """
    rows, cols = a.shape
    piv = np.empty(min(rows, cols), np.int64)
    lp = np.empty(cols, np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(cols):
                t = a[r, j]
                a[r, j] = a[p, j]
                a[p, j] = t
        inv = order - log[a[r, c]]
        for j in range(c, cols):
            a[r, j] = exp[log[a[r, j]] + inv]
            lp[j] = log[a[r, j]]
        start = 0 if reduced else r + 1
        for i in range(start, rows):
            if i == r:
                continue
            f = a[i, c]
            if f != 0:
                lf = log[f]
                for j in range(c, cols):
                    a[i, j] ^= exp[lf + lp[j]]
        piv[r] = c
        r += 1
    return r, piv[:r].copy()


@njit(cache=True)
def matmul(a, b, log, exp):
    n, m = a.shape
    p = b.shape[1]
    lb = np.empty((m, p), np.int64)
    for k in range(m):
        for j in range(p):
            lb[k, j] = log[b[k, j]]
    out = np.zeros((n, p), np.uint16)
    for i in range(n):
        for k in range(m):
            x = a[i, k]
            if x != 0:
                lx = log[x]
                for j in range(p):
                    out[i, j] ^= exp[lx + lb[k, j]]
    return out


@njit(cache=True)
def rank_of(a, log, exp, order):
    return rref_inplace(a, log, exp, order, False)[0]


@njit(cache=True)
def scan_combinations(base, frees, q, log, exp, order, dimk, want):
    """Indices of the coefficient vectors c in F_q^f (last entry fastest) with
    dimk - rank(base + sum_j c_j frees[j]) == want."""
    nf = frees.shape[0]
    rows, cols = base.shape
    lf = np.empty(frees.shape, np.int64)
    for j in range(nf):
        for a in range(rows):
            for b in range(cols):
                lf[j, a, b] = log[frees[j, a, b]]
    total = 1
    for _ in range(nf):
        total *= q
    hits = np.empty(total, np.int64)
    nhit = 0
    coef = np.zeros(nf, np.int64)
    work = np.empty((rows, cols), np.uint16)
    for idx in range(total):
        t = idx
        for j in range(nf - 1, -1, -1):
            coef[j] = t % q
            t //= q
        work[:, :] = base
        for j in range(nf):
            c = coef[j]
            if c != 0:
                lc = log[c]
                for a in range(rows):
                    for b in range(cols):
                        work[a, b] ^= exp[lc + lf[j, a, b]]
        if dimk - rref_inplace(work, log, exp, order, False)[0] == want:
            hits[nhit] = idx
            nhit += 1
    return hits[:nhit].copy()
