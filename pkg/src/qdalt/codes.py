"""Linear codes as canonical row spaces, and the code algebra built on them.

A :class:`LinearCode` always stores its generator in reduced row echelon form
without zero rows, so two codes are equal exactly when their generators are.
Codes live either over F_q (``level="base"``) or over F_{q^2} (``"ext"``).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable

import numpy as np

from . import linalg
from .errors import DimensionMismatch, LevelError, ParseError
from .galois import BASE, ELEM, EXT, FieldSpec, from_hex, to_hex

EXACT = "exact"
RANDOMIZED = "randomized"

#: extra random products drawn by the randomized Schur product
SCHUR_MARGIN = 16


@dataclass(frozen=True, eq=False)
class LinearCode:
    field: FieldSpec = dc_field(repr=False)
    level: str
    gen: np.ndarray = dc_field(repr=False)

    @property
    def n(self) -> int:
        return self.gen.shape[1]

    @property
    def dim(self) -> int:
        return self.gen.shape[0]

    def __eq__(self, other):
        return isinstance(other, LinearCode) and code_equals(self, other)

    __hash__ = None

    def __contains__(self, vector) -> bool:
        v = linalg.as_mat(vector, cols=self.n)
        return linalg.rank(self.field, np.vstack([self.gen, v])) == self.dim

    def __repr__(self):
        return f"LinearCode(level={self.level!r}, n={self.n}, dim={self.dim})"


def from_generator(f: FieldSpec, level: str, rows, n: int | None = None) -> LinearCode:
    """Row space of ``rows`` as a canonical code; ``n`` is needed for empty input."""
    if level not in (BASE, EXT):
        raise ValueError(f"unknown level {level!r}")
    m = linalg.as_mat(rows, cols=n)
    if m.size and int(m.max()) >= (f.q if level == BASE else f.qsq):
        raise LevelError(f"generator has entries outside the {level} field")
    gen, _ = linalg.rref(f, m)
    gen.setflags(write=False)
    return LinearCode(f, level, gen)


def _canonical(f, level, gen) -> LinearCode:
    gen.setflags(write=False)
    return LinearCode(f, level, gen)


def zero_code(f: FieldSpec, level: str, n: int) -> LinearCode:
    return _canonical(f, level, np.zeros((0, n), dtype=ELEM))


def full_space(f: FieldSpec, level: str, n: int) -> LinearCode:
    return _canonical(f, level, np.eye(n, dtype=ELEM))


def repetition(f: FieldSpec, level: str, n: int) -> LinearCode:
    """The code spanned by the all-one vector."""
    return _canonical(f, level, np.ones((1, n), dtype=ELEM))


def _check_pair(a: LinearCode, b: LinearCode):
    if a.n != b.n:
        raise DimensionMismatch(f"length mismatch: {a.n} vs {b.n}")
    if a.level != b.level:
        raise DimensionMismatch(f"level mismatch: {a.level} vs {b.level}")


def parity_check(c: LinearCode) -> np.ndarray:
    """A (non-canonical) basis of the dual, read directly off the rref."""
    _, piv = _pivots(c)
    return linalg.kernel_from_rref(c.gen, piv, c.n)


def _pivots(c: LinearCode) -> tuple[np.ndarray, list[int]]:
    if c.dim == 0:
        return c.gen, []
    nz = c.gen != 0
    return c.gen, [int(i) for i in nz.argmax(axis=1)]


def dual(c: LinearCode) -> LinearCode:
    return from_generator(c.field, c.level, parity_check(c), n=c.n)


def code_equals(a: LinearCode, b: LinearCode) -> bool:
    _check_pair(a, b)
    return a.gen.shape == b.gen.shape and bool(np.array_equal(a.gen, b.gen))


def code_contains(a: LinearCode, b: LinearCode) -> bool:
    """True iff b is a subcode of a."""
    _check_pair(a, b)
    if b.dim == 0:
        return True
    if b.dim > a.dim:
        return False
    return linalg.rank(a.field, np.vstack([a.gen, b.gen])) == a.dim


def schur_rows(f: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """All pairwise componentwise products of rows of a and rows of b."""
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((0, a.shape[1]), dtype=ELEM)
    return f.mul(a[:, None, :], b[None, :, :]).reshape(-1, a.shape[1])


def schur_product(
    a: LinearCode,
    b: LinearCode,
    mode: str = EXACT,
    seed: int | np.random.Generator | None = None,
) -> LinearCode:
    """Span of all a_i * b_j.

    The randomized mode draws ``n + SCHUR_MARGIN`` products of random codeword
    pairs and keeps the result only when at least ``SCHUR_MARGIN`` of the draws
    were redundant; otherwise it recomputes exactly.
    """
    _check_pair(a, b)
    f = a.field
    if mode == RANDOMIZED and a.dim * b.dim > a.n + SCHUR_MARGIN:
        rng = np.random.default_rng(seed)
        draws = a.n + SCHUR_MARGIN
        hi = f.q if a.level == BASE else f.qsq
        ca = rng.integers(0, hi, size=(draws, a.dim)).astype(ELEM)
        cb = rng.integers(0, hi, size=(draws, b.dim)).astype(ELEM)
        prods = f.mul(linalg.matmul(f, ca, a.gen), linalg.matmul(f, cb, b.gen))
        gen, _ = linalg.rref(f, prods)
        if draws - gen.shape[0] >= SCHUR_MARGIN:
            return _canonical(f, a.level, gen)
    elif mode not in (EXACT, RANDOMIZED):
        raise ValueError(f"unknown Schur product mode {mode!r}")
    gen, _ = linalg.rref(f, schur_rows(f, a.gen, b.gen))
    if gen.shape[0] == 0:
        gen = np.zeros((0, a.n), dtype=ELEM)
    return _canonical(f, a.level, gen)


def square(c: LinearCode, mode: str = EXACT, seed=None) -> LinearCode:
    return schur_product(c, c, mode, seed)


def conductor(d: LinearCode, c: LinearCode, mode: str = EXACT, seed=None) -> LinearCode:
    """Largest Z with d * Z contained in c, computed as (d * c^perp)^perp."""
    _check_pair(d, c)
    return dual(schur_product(d, dual(c), mode, seed))


def _complement(n: int, positions: Iterable[int]) -> tuple[np.ndarray, np.ndarray]:
    idx = np.unique(np.asarray(list(positions), dtype=np.int64))
    if idx.size and (idx[0] < 0 or idx[-1] >= n):
        raise IndexError(f"positions must lie in [0, {n})")
    keep = np.setdiff1d(np.arange(n), idx)
    return idx, keep


def puncture(c: LinearCode, positions: Iterable[int]) -> LinearCode:
    _, keep = _complement(c.n, positions)
    return from_generator(c.field, c.level, c.gen[:, keep], n=keep.size)


def shorten(c: LinearCode, positions: Iterable[int]) -> LinearCode:
    """Codewords vanishing on ``positions``, restricted to the other positions."""
    idx, keep = _complement(c.n, positions)
    if idx.size == 0:
        return c
    order = np.concatenate([idx, keep])
    r, piv = linalg.rref(c.field, c.gen[:, order])
    rows = [i for i, p in enumerate(piv) if p >= idx.size]
    sub = r[rows][:, idx.size :]
    return from_generator(c.field, c.level, sub, n=keep.size)


def _require(c: LinearCode, level: str):
    if c.level != level:
        raise LevelError(f"expected a code at level {level!r}, got {c.level!r}")


def subfield_kernel(f: FieldSpec, h: np.ndarray) -> LinearCode:
    """{v in F_q^n : h v^T = 0} for a matrix h over F_{q^2}.

    Each row of h is split into its two F_q coordinate rows, giving a kernel
    problem over F_q.
    """
    u, v = f.split(h)
    stacked = np.vstack([u, v])
    k = linalg.right_kernel(f, stacked)
    return _canonical(f, BASE, k)


def subfield_subcode(c: LinearCode) -> LinearCode:
    """C intersected with F_q^n."""
    _require(c, EXT)
    return subfield_kernel(c.field, parity_check(c))


def trace_code(c: LinearCode) -> LinearCode:
    """Tr(C); the F_q-span of Tr(g) and Tr(alpha g) over an F_{q^2}-basis g."""
    _require(c, EXT)
    f = c.field
    rows = np.vstack([f.trace(c.gen), f.trace(f.mul(f.alpha, c.gen))])
    return from_generator(f, BASE, rows, n=c.n)


def extend_scalars(c: LinearCode) -> LinearCode:
    _require(c, BASE)
    return _canonical(c.field, EXT, c.gen.copy())


# -- serialisation ---------------------------------------------------------

def format_code(c: LinearCode) -> list[str]:
    lines = [f"code {c.level} {c.n} {c.dim}"]
    lines.extend(to_hex(row) for row in c.gen)
    return lines


def parse_code(f: FieldSpec, lines: list[str], start: int = 0, path=None) -> tuple[LinearCode, int]:
    """Parse a code block starting at ``lines[start]``; returns the code and next index."""
    if start >= len(lines):
        raise ParseError("missing code header", start + 1, path)
    head = lines[start].split()
    if len(head) != 4 or head[0] != "code" or head[1] not in (BASE, EXT):
        raise ParseError("expected 'code <level> <n> <dim>'", start + 1, path)
    try:
        n, dim = int(head[2]), int(head[3])
    except ValueError:
        raise ParseError("bad code dimensions", start + 1, path) from None
    gen = np.zeros((dim, n), dtype=ELEM)
    for i in range(dim):
        ln = start + 1 + i
        if ln >= len(lines):
            raise ParseError(f"truncated code: expected {dim} rows", ln + 1, path)
        toks = lines[ln].split()
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, got {len(toks)}", ln + 1, path)
        try:
            gen[i] = from_hex(toks)
        except (ValueError, OverflowError):
            raise ParseError("bad hex entry", ln + 1, path) from None
    limit = f.q if head[1] == BASE else f.qsq
    if gen.size and int(gen.max()) >= limit:
        raise ParseError("code entry outside its field", start + 1, path)
    code = from_generator(f, head[1], gen, n=n)
    if code.dim != dim or not np.array_equal(code.gen, gen):
        raise ParseError("generator rows are not in reduced echelon form", start + 1, path)
    return code, start + 1 + dim
