"""Dense linear algebra over a :class:`~qdalt.galois.FieldSpec`.

Matrices are 2-D ``uint16`` numpy arrays whose entries are field elements in
the integer encoding of :mod:`qdalt.galois`; the field is passed alongside.
Every function returns fresh arrays and never mutates its inputs.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import DimensionMismatch
from .galois import ELEM, FieldSpec


def as_mat(a, cols: int | None = None) -> np.ndarray:
    m = np.asarray(a, dtype=ELEM)
    if m.ndim == 1:
        m = m.reshape(1, -1) if m.size or cols is None else m.reshape(0, cols)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {m.shape}")
    if cols is not None and m.shape[1] != cols:
        if m.shape[0] == 0:
            return np.zeros((0, cols), dtype=ELEM)
        raise DimensionMismatch(f"expected {cols} columns, got {m.shape[1]}")
    return m


def rref(f: FieldSpec, m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with zero rows dropped, and the pivot columns."""
    a = np.array(as_mat(m), dtype=ELEM, copy=True, order="C")
    if a.size == 0:
        return np.zeros((0, a.shape[1]), dtype=ELEM), []
    rank, piv = _kernels.rref_inplace(a, f.log, f.exp, f.order, True)
    return a[:rank].copy(), [int(p) for p in piv]


def rank(f: FieldSpec, m) -> int:
    a = np.array(as_mat(m), dtype=ELEM, copy=True, order="C")
    if a.size == 0:
        return 0
    return int(_kernels.rank_of(a, f.log, f.exp, f.order))


def kernel_from_rref(r: np.ndarray, piv: list[int], cols: int) -> np.ndarray:
    """Basis of the right kernel read off an rref; one row per free column."""
    free = np.setdiff1d(np.arange(cols), np.asarray(piv, dtype=np.int64))
    k = np.zeros((free.size, cols), dtype=ELEM)
    k[np.arange(free.size), free] = 1
    if piv:
        # char 2: -R[i, f] = R[i, f]
        k[:, piv] = r[:, free].T
    return k


def right_kernel(f: FieldSpec, m, *, canonical: bool = True) -> np.ndarray:
    """Rows spanning {v : m v^T = 0}.

    ``canonical=False`` skips the final rref of the basis, which is cheaper
    when only the span matters.
    """
    m = as_mat(m)
    r, piv = rref(f, m)
    k = kernel_from_rref(r, piv, m.shape[1])
    if canonical and k.shape[0]:
        k, _ = rref(f, k)
    return k


def matmul(f: FieldSpec, a, b) -> np.ndarray:
    a = as_mat(a)
    b = as_mat(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=ELEM)
    return _kernels.matmul(np.ascontiguousarray(a), np.ascontiguousarray(b), f.log, f.exp)


def solve(f: FieldSpec, m, b) -> np.ndarray | None:
    """Some v with m v^T = b^T, or None when the system is inconsistent."""
    m = as_mat(m)
    b = np.asarray(b, dtype=ELEM).ravel()
    if b.size != m.shape[0]:
        raise DimensionMismatch(f"right-hand side has length {b.size}, matrix has {m.shape[0]} rows")
    aug = np.hstack([m, b.reshape(-1, 1)])
    r, piv = rref(f, aug)
    cols = m.shape[1]
    if piv and piv[-1] == cols:
        return None
    v = np.zeros(cols, dtype=ELEM)
    if piv:
        v[piv] = r[:, cols]
    return v


def rowspace_intersect(f: FieldSpec, a, b) -> np.ndarray:
    """rref basis of rowspace(a) and rowspace(b), via (a^perp + b^perp)^perp."""
    a = as_mat(a)
    b = as_mat(b, cols=a.shape[1])
    ka = right_kernel(f, a, canonical=False)
    kb = right_kernel(f, b, canonical=False)
    return right_kernel(f, np.vstack([ka, kb]))


def is_zero(m) -> bool:
    return not np.any(m)
