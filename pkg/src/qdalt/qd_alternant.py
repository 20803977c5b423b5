"""GRS, Reed-Solomon and alternant codes; quasi-dyadic keys and invariant codes.

Supports and multipliers are 1-D ``uint16`` arrays over F_{q^2}.  A
quasi-dyadic support is a concatenation of n_0 orbits t_j + G of an additive
group G, each orbit listed in the group's element order, so that the
translation by a group element acts on a block by XOR on the index.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import codes, linalg
from .codes import LinearCode
from .errors import DependentGenerators, DimensionMismatch, ParameterInfeasible, SamplingExhausted
from .galois import BASE, ELEM, EXT, FieldSpec

KEYGEN_ATTEMPTS = 64


def check_support(x) -> np.ndarray:
    x = np.asarray(x, dtype=ELEM)
    if np.unique(x).size != x.size:
        raise ValueError("support entries must be pairwise distinct")
    return x


def check_multiplier(y) -> np.ndarray:
    y = np.asarray(y, dtype=ELEM)
    if np.any(y == 0):
        raise ValueError("multiplier entries must be nonzero")
    return y


def power_rows(f: FieldSpec, x: np.ndarray, y: np.ndarray, k: int) -> np.ndarray:
    """Rows y * x^j for j = 0..k-1."""
    x = np.asarray(x, dtype=ELEM)
    rows = np.empty((k, x.size), dtype=ELEM)
    cur = np.asarray(y, dtype=ELEM)
    for j in range(k):
        rows[j] = cur
        cur = f.mul(cur, x)
    return rows


def grs(f: FieldSpec, k: int, x, y) -> LinearCode:
    x = check_support(x)
    y = check_multiplier(y)
    if x.size != y.size:
        raise DimensionMismatch("support and multiplier lengths differ")
    if not 0 <= k <= x.size:
        raise ValueError(f"GRS dimension {k} out of range for length {x.size}")
    return codes.from_generator(f, EXT, power_rows(f, x, y, k), n=x.size)


def rs(f: FieldSpec, k: int, x) -> LinearCode:
    return grs(f, k, x, np.ones(len(x), dtype=ELEM))


def locator_derivative(f: FieldSpec, x) -> np.ndarray:
    """pi_x'(x_i) = prod_{j != i} (x_i - x_j)."""
    x = check_support(x)
    diff = x[:, None] ^ x[None, :]
    np.fill_diagonal(diff, 1)
    logs = f.log[diff].sum(axis=1) % f.order
    return f.exp[logs]


def dual_multiplier(f: FieldSpec, x, y) -> np.ndarray:
    y = check_multiplier(y)
    return f.inv(f.mul(locator_derivative(f, x), y))


def alternant(f: FieldSpec, r: int, x, y) -> LinearCode:
    """Alt_r(x, y) = GRS_r(x, y)^perp intersected with F_q^n.

    Codewords are the F_q-solutions of the parity-check rows y * x^j, j < r.
    Degrees r >= n are accepted and give the zero code.
    """
    x = check_support(x)
    y = check_multiplier(y)
    if r < 0:
        raise ValueError("degree must be non-negative")
    if r == 0:
        return codes.full_space(f, BASE, x.size)
    return codes.subfield_kernel(f, power_rows(f, x, y, min(r, x.size)))


def alternant_degree(f: FieldSpec, c: LinearCode, x, y) -> int:
    """Largest s with C inside Alt_s(x, y), read off the syndromes of C's basis."""
    x = check_support(x)
    if c.dim == 0:
        return x.size
    syn = linalg.matmul(f, c.gen, power_rows(f, x, y, x.size).T)
    nz = np.flatnonzero(syn.any(axis=0))
    return int(nz[0]) if nz.size else x.size


def is_fully_nondegenerate(f: FieldSpec, r: int, x, y) -> bool:
    a = alternant(f, r, x, y)
    if a.dim == 0 or not np.all(a.gen.any(axis=0)):
        return False
    return not codes.code_equals(a, alternant(f, r + 1, x, y))


def norm_trace_code(f: FieldSpec, x) -> LinearCode:
    x = np.asarray(x, dtype=ELEM)
    rows = np.vstack([
        np.ones(x.size, dtype=ELEM),
        f.trace(x),
        f.trace(f.mul(f.alpha, x)),
        f.norm(x),
    ])
    return codes.from_generator(f, BASE, rows, n=x.size)


# -- additive groups ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AdditiveGroup:
    field: FieldSpec = dc_field(repr=False)
    gens: tuple[int, ...]
    elements: np.ndarray = dc_field(repr=False)

    @property
    def gamma(self) -> int:
        return len(self.gens)

    @property
    def order(self) -> int:
        return 1 << len(self.gens)


def make_group(f: FieldSpec, gens) -> AdditiveGroup:
    """Group spanned by ``gens``; element i is sum of gens[k] over the set bits k of i.

    This lists 0 < a1 < a2 < a1+a2 < a3 < ... as in the lexicographic order of
    coefficient vectors (u_1, ..., u_gamma) read with u_1 varying fastest.
    """
    gens = tuple(int(g) for g in gens)
    elems = np.zeros(1, dtype=ELEM)
    for g in gens:
        if not 0 < g < f.qsq:
            raise DependentGenerators(f"{g:x} is not a nonzero field element")
        elems = np.concatenate([elems, elems ^ ELEM(g)])
    if np.unique(elems).size != elems.size:
        raise DependentGenerators("generators are linearly dependent over GF(2)")
    elems.setflags(write=False)
    return AdditiveGroup(f, gens, elems)


def poly_mul(f: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros(a.size + b.size - 1, dtype=ELEM)
    for i, c in enumerate(a):
        if c:
            out[i : i + b.size] ^= f.mul(c, b)
    return out


def poly_eval(f: FieldSpec, coeffs: np.ndarray, x) -> np.ndarray:
    x = np.asarray(x, dtype=ELEM)
    acc = np.zeros(x.shape, dtype=ELEM)
    for c in coeffs[::-1]:
        acc = f.mul(acc, x) ^ ELEM(c)
    return acc


def psi_poly(g: AdditiveGroup) -> np.ndarray:
    """Coefficients (low degree first) of the monic additive polynomial vanishing on g."""
    f = g.field
    poly = np.ones(1, dtype=ELEM)
    for a in g.elements:
        poly = poly_mul(f, poly, np.array([a, 1], dtype=ELEM))
    nz = np.flatnonzero(poly)
    if not all(d & (d - 1) == 0 for d in nz if d):
        raise AssertionError("psi_G is not additive")  # pragma: no cover
    return poly


def psi_eval(g: AdditiveGroup, x) -> np.ndarray:
    f = g.field
    x = np.asarray(x, dtype=ELEM)
    out = np.ones(x.shape, dtype=ELEM)
    for a in g.elements:
        out = f.mul(out, x ^ a)
    return out


def qd_support(g: AdditiveGroup, t) -> np.ndarray:
    t = np.asarray(t, dtype=ELEM)
    return (t[:, None] ^ g.elements[None, :]).reshape(-1)


def fold(v, gamma: int) -> np.ndarray:
    """Keep the first coordinate of every block of length 2^gamma."""
    v = np.asarray(v)
    return v[..., :: 1 << gamma]


def unfold(v, gamma: int) -> np.ndarray:
    return np.repeat(np.asarray(v), 1 << gamma, axis=-1)


def _block_sums(h: np.ndarray, gamma: int) -> np.ndarray:
    b = 1 << gamma
    if h.shape[1] % b:
        raise DimensionMismatch(f"length {h.shape[1]} is not a multiple of {b}")
    return np.bitwise_xor.reduce(h.reshape(h.shape[0], -1, b), axis=2)


def punctured_invariant(c: LinearCode, gamma: int) -> LinearCode:
    """Invariant subcode with one coordinate kept per block.

    Blocks are G-orbits permuted transitively by the group, so invariant words
    are exactly the block-constant codewords; c-bar lies in the result iff the
    block sums of the columns of a parity-check matrix annihilate it.
    """
    f = c.field
    h = codes.parity_check(c)
    n0 = c.n >> gamma
    if c.n % (1 << gamma):
        raise DimensionMismatch(f"length {c.n} is not a multiple of {1 << gamma}")
    if h.shape[0] == 0:
        return codes.full_space(f, c.level, n0)
    k = linalg.right_kernel(f, _block_sums(h, gamma))
    return codes.from_generator(f, c.level, k, n=n0)


def invariant_code(c: LinearCode, gamma: int) -> LinearCode:
    p = punctured_invariant(c, gamma)
    return codes.from_generator(c.field, c.level, unfold(p.gen, gamma), n=c.n)


def invariant_dim_of_alternant(f: FieldSpec, r: int, x, y, gamma: int) -> int:
    """dim of the invariant subcode of Alt_r(x, y), without building Alt_r."""
    x = np.asarray(x, dtype=ELEM)
    n0 = x.size >> gamma
    if r == 0:
        return n0
    h = power_rows(f, x, y, min(r, x.size))
    u, v = f.split(_block_sums(h, gamma))
    return n0 - linalg.rank(f, np.vstack([u, v]))


# -- keys ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QdSecretKey:
    field: FieldSpec = dc_field(repr=False)
    group: AdditiveGroup
    t: np.ndarray = dc_field(repr=False)
    y_blocks: np.ndarray = dc_field(repr=False)
    r0: int

    @property
    def gamma(self) -> int:
        return self.group.gamma

    @property
    def n0(self) -> int:
        return self.t.size

    @property
    def n(self) -> int:
        return self.n0 << self.gamma

    @property
    def r(self) -> int:
        return self.r0 << self.gamma

    @property
    def x(self) -> np.ndarray:
        return qd_support(self.group, self.t)

    @property
    def y(self) -> np.ndarray:
        return unfold(self.y_blocks, self.gamma)

    def folded_support(self) -> np.ndarray:
        return psi_eval(self.group, self.t)

    def public_code(self) -> LinearCode:
        return alternant(self.field, self.r, self.x, self.y)


@dataclass(frozen=True, eq=False)
class QdPublicKey:
    field: FieldSpec = dc_field(repr=False)
    gamma: int
    n0: int
    code: LinearCode

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def k(self) -> int:
        return self.code.dim

    @property
    def r(self) -> int:
        return (self.n - self.k) // 2

    @property
    def k0(self) -> int:
        return self.k >> self.gamma


def check_qd_params(f: FieldSpec, gamma: int, n0: int, r0: int):
    q, b = f.q, 1 << gamma
    if gamma < 1 or b > q:
        raise ParameterInfeasible(f"need 1 <= 2^gamma <= q, got gamma={gamma}, q={q}")
    if n0 * b > f.qsq:
        raise ParameterInfeasible(f"length {n0 * b} exceeds q^2 = {f.qsq}")
    if r0 < 1 or n0 <= 2 * r0 + 2 * q // b:
        raise ParameterInfeasible(f"need n0 > 2 r0 + 2q/2^gamma, got n0={n0}, r0={r0}")


def random_group(f: FieldSpec, gamma: int, rng: np.random.Generator) -> AdditiveGroup:
    gens: list[int] = []
    span = {0}
    while len(gens) < gamma:
        g = int(rng.integers(1, f.qsq))
        if g in span:
            continue
        gens.append(g)
        span |= {s ^ g for s in span}
    return make_group(f, gens)


def random_cosets(g: AdditiveGroup, n0: int, rng: np.random.Generator) -> np.ndarray:
    """n0 representatives with pairwise disjoint G-orbits."""
    f = g.field
    if n0 * g.order > f.qsq:
        raise ParameterInfeasible("not enough cosets")
    seen: set[int] = set()
    t = []
    while len(t) < n0:
        cand = int(rng.integers(0, f.qsq))
        orbit = int((g.elements ^ ELEM(cand)).min())
        if orbit in seen:
            continue
        seen.add(orbit)
        t.append(cand)
    return np.array(t, dtype=ELEM)


def qd_keygen(f: FieldSpec, gamma: int, n0: int, r0: int, seed=None) -> tuple[QdSecretKey, QdPublicKey]:
    """Sample a quasi-dyadic alternant key pair.

    Draws are rejected until the public code has dimension n - 2r and the
    folded code Alt_{r0 + q/2^gamma} is fully non-degenerate.
    """
    check_qd_params(f, gamma, n0, r0)
    rng = np.random.default_rng(seed)
    r = r0 << gamma
    n = n0 << gamma
    for _ in range(KEYGEN_ATTEMPTS):
        group = random_group(f, gamma, rng)
        t = random_cosets(group, n0, rng)
        yb = f.random(rng, n0, nonzero=True)
        sk = QdSecretKey(f, group, t, yb, r0)
        if not is_fully_nondegenerate(f, r0 + (f.q >> gamma), sk.folded_support(), yb):
            continue
        cpub = sk.public_code()
        if cpub.dim != n - 2 * r:
            continue
        return sk, QdPublicKey(f, gamma, n0, cpub)
    raise SamplingExhausted(f"no valid key after {KEYGEN_ATTEMPTS} attempts")


def random_qd_code(f: FieldSpec, gamma: int, n0: int, k0: int, seed=None) -> LinearCode:
    """A random F_q-code of length n0 2^gamma and dimension k0 2^gamma invariant
    under the block permutations (generated by the orbits of k0 random words)."""
    rng = np.random.default_rng(seed)
    b = 1 << gamma
    n, k = n0 * b, k0 * b
    idx = np.arange(b)
    blocks = np.arange(n0)[:, None] * b
    for _ in range(KEYGEN_ATTEMPTS):
        words = f.random(rng, (k0, n), level=BASE)
        rows = []
        for a in range(b):
            perm = (blocks + (idx ^ a)[None, :]).reshape(-1)
            rows.append(words[:, perm])
        c = codes.from_generator(f, BASE, np.vstack(rows), n=n)
        if c.dim == k:
            return c
    raise SamplingExhausted("could not sample a random quasi-dyadic code")
