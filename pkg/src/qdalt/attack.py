"""Key recovery for quasi-dyadic alternant codes over a quadratic extension.

The attack looks for the hidden subcode D of the invariant code whose
conductor into the public code is the norm-trace code NT(x), then reads the
support off NT(x), solves for the multiplier and, when the search ran on a
shortened code, extends both back to full length.

Searches are ordered and reproducible: every examined subspace (or random
pair) has a global trial index, candidates are tried in index order and the
first verified key wins, whatever the number of worker processes.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product
from typing import Iterator

import numpy as np

from . import _kernels, codes, linalg
from . import qd_alternant as qa
from .codes import EXACT, RANDOMIZED, LinearCode
from .errors import (
    ExtensionFailed,
    NoMultiplier,
    NotNormTrace,
    ParameterInfeasible,
    SearchExhausted,
)
from .galois import BASE, ELEM, FieldSpec, to_hex

BRUTEFORCE = "bruteforce"
RANDOM_PAIRS = "random_pairs"
SHORTENED = "shortened"
VARIANTS = (BRUTEFORCE, RANDOM_PAIRS, SHORTENED)

NT_DIM = 4
RANDOM_CHUNK = 512


def codimension_of_d(q: int, gamma: int) -> int:
    """Codimension c = 2q/|G| of D in the invariant code (0 once |G| > q)."""
    b = 1 << gamma
    return 2 * q // b if b <= q else 0


@dataclass(frozen=True)
class AttackConfig:
    variant: str = BRUTEFORCE
    seed: int = 0
    max_trials: int = 1 << 20
    jobs: int = 1
    mode: str = EXACT

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.max_trials < 1:
            raise ValueError("max_trials must be at least 1")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if self.mode not in (EXACT, RANDOMIZED):
            raise ValueError(f"unknown conductor mode {self.mode!r}")


@dataclass(frozen=True, eq=False)
class NormTraceCandidate:
    code: LinearCode
    witness: LinearCode
    shortened_at: tuple[int, ...] = ()
    trial: int = 0


@dataclass(frozen=True, eq=False)
class RecoveredKey:
    x: np.ndarray = dc_field(repr=False)
    y: np.ndarray = dc_field(repr=False)
    r: int
    note: str = ""


@dataclass(eq=False)
class AttackReport:
    variant: str
    seed: int
    trials: int
    wall_time: float
    key: RecoveredKey | None
    verified: bool
    failures: dict = dc_field(default_factory=dict)

    def lines(self) -> list[str]:
        out = [
            f"variant={self.variant}",
            f"seed={self.seed}",
            f"trials={self.trials}",
            f"wall_time={self.wall_time:.3f}",
            f"verified={int(self.verified)}",
        ]
        if self.key is not None:
            out += [
                f"r={self.key.r}",
                f"normalization={self.key.note}",
                f"x={to_hex(self.key.x)}",
                f"y={to_hex(self.key.y)}",
            ]
        fails = ",".join(f"{k}:{v}" for k, v in sorted(self.failures.items()))
        out.append(f"failures={fails}")
        return out

    def to_text(self) -> str:
        return "\n".join(self.lines()) + "\n"


# -- oracles and tests ---------------------------------------------------------

def true_D(sk: qa.QdSecretKey) -> LinearCode:
    """The invariant subcode of Alt_{r+q}(x, y), computed from the secret key."""
    f = sk.field
    if sk.group.order > f.q:
        return qa.invariant_code(sk.public_code(), sk.gamma)
    return qa.invariant_code(qa.alternant(f, sk.r + f.q, sk.x, sk.y), sk.gamma)


def normtrace_test(x: LinearCode, c: LinearCode, mode: str = EXACT, seed=None,
                   shortened_at=(), trial: int = 0) -> NormTraceCandidate | None:
    """Accept X when Cond(X, C) has dimension 4 and contains the all-one word."""
    z = codes.conductor(x, c, mode, seed)
    if z.dim != NT_DIM or np.ones(z.n, dtype=ELEM) not in z:
        return None
    return NormTraceCandidate(z, x, tuple(shortened_at), trial)


def estimate_workfactor(n: int, q: int, gamma: int) -> float:
    """log2 of 2 n^3 q^(4q/|G|)."""
    return 1 + 3 * math.log2(n) + (4 * q / (1 << gamma)) * math.log2(q)


# -- Grassmannian enumeration -----------------------------------------------

def gaussian_binomial(m: int, d: int, q: int) -> int:
    if not 0 <= d <= m:
        return 0
    num = den = 1
    for i in range(d):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _free_columns(pattern: tuple[int, ...], m: int) -> list[list[int]]:
    piv = set(pattern)
    return [[j for j in range(p + 1, m) if j not in piv] for p in pattern]


def grassmannian(q: int, m: int, d: int) -> Iterator[np.ndarray]:
    """All d-dimensional subspaces of F_q^m as d x m rref matrices.

    Pivot patterns come in lexicographic order; within a pattern the free
    entries run as an odometer read row by row, the last entry fastest.
    """
    for pattern in combinations(range(m), d):
        free = _free_columns(pattern, m)
        slots = [(i, j) for i, cols in enumerate(free) for j in cols]
        for vals in product(range(q), repeat=len(slots)):
            a = np.zeros((d, m), dtype=ELEM)
            a[np.arange(d), pattern] = 1
            for (i, j), v in zip(slots, vals):
                a[i, j] = v
            yield a


@dataclass(frozen=True, eq=False)
class _Task:
    offset: int
    size: int
    pattern: tuple[int, ...] = ()
    prefix: np.ndarray | None = None
    free: tuple[int, ...] = ()


def _enumeration_tasks(q: int, m: int, d: int) -> Iterator[_Task]:
    """Split the Grassmannian into runs sharing their first d - 1 rows."""
    offset = 0
    for pattern in combinations(range(m), d):
        free = _free_columns(pattern, m)
        slots = [(i, j) for i, cols in enumerate(free[:-1]) for j in cols]
        size = q ** len(free[-1])
        for vals in product(range(q), repeat=len(slots)):
            prefix = np.zeros((d - 1, m), dtype=ELEM)
            prefix[np.arange(d - 1), pattern[:-1]] = 1
            for (i, j), v in zip(slots, vals):
                prefix[i, j] = v
            yield _Task(offset, size, pattern, prefix, tuple(free[-1]))
            offset += size


def _last_row(task: _Task, idx: int, q: int, m: int) -> np.ndarray:
    row = np.zeros(m, dtype=ELEM)
    row[task.pattern[-1]] = 1
    for j in reversed(task.free):
        row[j] = idx % q
        idx //= q
    return row


class _Scanner:
    """Conductor dimensions of subspaces of an invariant code, without the
    full conductor: Cond(X, C) = {z : H (x_i * z)^T = 0 for all i}."""

    def __init__(self, f: FieldSpec, h: np.ndarray, basis: np.ndarray):
        self.f = f
        self.h = h
        self.basis = basis
        self.mv = f.mul(h[None, :, :], basis[:, None, :])

    @property
    def n(self) -> int:
        return self.basis.shape[1]

    def stacked(self, coeffs: np.ndarray) -> np.ndarray:
        x = linalg.matmul(self.f, coeffs, self.basis)
        return self.f.mul(self.h[None, :, :], x[:, None, :]).reshape(-1, self.n)

    def conductor_dim(self, coeffs: np.ndarray) -> int:
        return self.n - linalg.rank(self.f, self.stacked(coeffs))

    def scan(self, task: _Task) -> list[int]:
        f = self.f
        if task.prefix.shape[0]:
            k = linalg.right_kernel(f, self.stacked(task.prefix), canonical=False)
        else:
            k = np.eye(self.n, dtype=ELEM)
        if k.shape[0] < NT_DIM:
            return []
        kt = np.ascontiguousarray(k.T)
        base = linalg.matmul(f, self.mv[task.pattern[-1]], kt)
        frees = np.zeros((len(task.free),) + base.shape, dtype=ELEM)
        for i, j in enumerate(task.free):
            frees[i] = linalg.matmul(f, self.mv[j], kt)
        hits = _kernels.scan_combinations(base, frees, f.q, f.log, f.exp, f.order, k.shape[0], NT_DIM)
        return [task.offset + int(i) for i in hits]

    def random_chunk(self, seed: int, start: int, stop: int) -> list[tuple[int, np.ndarray]]:
        f = self.f
        m = self.basis.shape[0]
        hits = []
        for t in range(start, stop):
            a = f.random(np.random.default_rng([seed, t]), (2, m), level=BASE)
            if linalg.rank(f, a) < 2:
                continue
            if self.conductor_dim(a) == NT_DIM:
                hits.append((t, a))
        return hits


_worker_state: dict = {}


def _init_worker(scanner: _Scanner):
    _worker_state["scanner"] = scanner


def _dispatch(scanner: _Scanner, job):
    if isinstance(job, _Task):
        return scanner.scan(job)
    return scanner.random_chunk(*job)


def _run_job(job):
    return _dispatch(_worker_state["scanner"], job)


class _Search:
    """Ordered stream of accepted norm-trace candidates for one public key."""

    def __init__(self, pk: qa.QdPublicKey, cfg: AttackConfig):
        f = pk.field
        self.pk = pk
        self.cfg = cfg
        c = codimension_of_d(f.q, pk.gamma)
        self.c = c
        self.shortened_at: tuple[int, ...] = ()
        ambient = pk.code
        if cfg.variant == SHORTENED:
            a0 = pk.k0 - c - 2
            if a0 < 0:
                raise ParameterInfeasible(f"k0 - c - 2 = {a0} < 0, nothing to shorten")
            self.shortened_at = tuple(range(a0 << pk.gamma))
            ambient = codes.shorten(pk.code, self.shortened_at)
        elif cfg.variant == RANDOM_PAIRS and 2 * (pk.n - pk.k) < pk.n:
            raise ParameterInfeasible("random pairs need rate k/n <= 1/2")
        self.ambient = ambient
        inv = qa.invariant_code(ambient, pk.gamma)
        self.inv = inv
        if cfg.variant == SHORTENED:
            self.d = 2
        elif cfg.variant == RANDOM_PAIRS:
            self.d = 2
        else:
            self.d = inv.dim - c
        if not 1 <= self.d <= inv.dim:
            raise ParameterInfeasible(f"cannot search {self.d}-dimensional subspaces of a "
                                      f"{inv.dim}-dimensional invariant code")
        self.scanner = _Scanner(f, codes.parity_check(ambient), np.ascontiguousarray(inv.gen))
        self.trials = 0

    @property
    def space_size(self) -> int:
        if self.cfg.variant == RANDOM_PAIRS:
            return self.cfg.max_trials
        return gaussian_binomial(self.inv.dim, self.d, self.pk.field.q)

    def _jobs(self) -> Iterator[tuple[object, int, int]]:
        """(job, first index, end index) in index order, capped at max_trials."""
        cap = self.cfg.max_trials
        if self.cfg.variant == RANDOM_PAIRS:
            for start in range(0, cap, RANDOM_CHUNK):
                stop = min(start + RANDOM_CHUNK, cap)
                yield (self.cfg.seed, start, stop), start, stop
            return
        q, m = self.pk.field.q, self.inv.dim
        for task in _enumeration_tasks(q, m, self.d):
            if task.offset >= cap:
                return
            yield task, task.offset, min(task.offset + task.size, cap)

    def _results(self) -> Iterator[tuple[object, list, int]]:
        jobs = self._jobs()
        if self.cfg.jobs == 1:
            for job, _, end in jobs:
                yield job, _dispatch(self.scanner, job), end
            return
        batch_size = 2 * self.cfg.jobs
        with ProcessPoolExecutor(self.cfg.jobs, initializer=_init_worker,
                                 initargs=(self.scanner,)) as pool:
            while True:
                batch = [j for _, j in zip(range(batch_size), jobs)]
                if not batch:
                    return
                results = pool.map(_run_job, [j for j, _, _ in batch])
                for (job, _, end), res in zip(batch, results):
                    yield job, res, end

    def candidates(self) -> Iterator[NormTraceCandidate]:
        f = self.pk.field
        cap = self.cfg.max_trials
        for job, hits, end in self._results():
            for hit in hits:
                if self.cfg.variant == RANDOM_PAIRS:
                    idx, coeffs = hit
                else:
                    idx = hit
                    if idx >= cap:
                        continue
                    row = _last_row(job, idx - job.offset, f.q, self.inv.dim)
                    coeffs = np.vstack([job.prefix, row])
                self.trials = idx + 1
                x = codes.from_generator(f, BASE, linalg.matmul(f, coeffs, self.inv.gen), n=self.inv.n)
                cand = normtrace_test(x, self.ambient, self.cfg.mode, [self.cfg.seed, idx],
                                      self.shortened_at, idx)
                if cand is not None:
                    yield cand
            self.trials = end


def _first(pk, cfg) -> NormTraceCandidate:
    search = _Search(pk, cfg)
    for cand in search.candidates():
        return cand
    raise SearchExhausted(f"{cfg.variant} search found no norm-trace candidate", search.trials)


def search_bruteforce(pk: qa.QdPublicKey, cfg: AttackConfig) -> NormTraceCandidate:
    return _first(pk, _with_variant(cfg, BRUTEFORCE))


def search_random_pairs(pk: qa.QdPublicKey, cfg: AttackConfig) -> NormTraceCandidate:
    return _first(pk, _with_variant(cfg, RANDOM_PAIRS))


def search_shortened(pk: qa.QdPublicKey, cfg: AttackConfig) -> NormTraceCandidate:
    return _first(pk, _with_variant(cfg, SHORTENED))


def _with_variant(cfg: AttackConfig, variant: str) -> AttackConfig:
    if cfg.variant == variant:
        return cfg
    return AttackConfig(variant, cfg.seed, cfg.max_trials, cfg.jobs, cfg.mode)


# -- finishing steps -----------------------------------------------------------

def recover_support(nt: NormTraceCandidate | LinearCode) -> np.ndarray:
    """A support x with NT(x) = nt, normalised so that x[0] = 0 and x[1] = 1.

    The answer is x or its conjugate x^q; both describe the same codes.
    """
    code = nt.code if isinstance(nt, NormTraceCandidate) else nt
    f = code.field
    n = code.n
    if code.dim != NT_DIM or n < 3:
        raise NotNormTrace(f"candidate has dimension {code.dim}, expected {NT_DIM}")
    ext = codes.extend_scalars(code)
    s = codes.shorten(ext, [0])
    if s.dim != 3:
        raise NotNormTrace("shortened candidate does not have dimension 3")
    inter = linalg.rowspace_intersect(f, s.gen, codes.square(s).gen)
    if inter.shape[0] != 1 or inter[0, 0] == 0:
        raise NotNormTrace("S and its square do not meet in a line")
    target = np.concatenate([[0], f.div(inter[0], inter[0, 0])]).astype(ELEM)

    # points of ext with entries 0 and 1 at positions 0 and 1
    cons = np.ascontiguousarray(ext.gen[:, :2].T)
    lam = linalg.solve(f, cons, [0, 1])
    if lam is None:
        raise NotNormTrace("no codeword with prescribed first entries")
    kb = linalg.right_kernel(f, cons)
    p = linalg.matmul(f, lam.reshape(1, -1), ext.gen)[0]
    dirs = linalg.matmul(f, kb, ext.gen)
    grid = np.arange(f.qsq, dtype=ELEM)
    coeffs = np.stack(np.meshgrid(grid, grid, indexing="ij"), axis=-1).reshape(-1, 2)
    if dirs.shape[0] != 2:
        raise NotNormTrace("unexpected dimension of the affine slice")
    alive = np.arange(coeffs.shape[0])
    for pos in range(2, n):
        vals = p[pos] ^ f.mul(coeffs[alive, 0], dirs[0, pos]) ^ f.mul(coeffs[alive, 1], dirs[1, pos])
        alive = alive[f.norm(vals) == target[pos]]
        if alive.size == 0:
            raise NotNormTrace("no codeword has the expected norm")
    a, b = coeffs[alive[0]]
    x = p ^ f.mul(a, dirs[0]) ^ f.mul(b, dirs[1])
    if np.unique(x).size != n:
        raise NotNormTrace("recovered support has repeated entries")
    return x.astype(ELEM)


def recover_multiplier(f: FieldSpec, x, c: LinearCode, r: int, seed: int = 0) -> np.ndarray:
    """A multiplier y with C inside Alt_r(x, y), from the kernel of the system
    sum_i y_i x_i^j g_i = 0 over all rows g of a generator matrix and j < r."""
    x = qa.check_support(x)
    if x.size != c.n:
        raise NoMultiplier("support length differs from the code length")
    rows = [f.mul(c.gen, f.pow(x, j)[None, :]) for j in range(r)]
    sol = linalg.right_kernel(f, np.vstack(rows)) if rows else np.eye(c.n, dtype=ELEM)
    if sol.shape[0] == 0:
        raise NoMultiplier("no multiplier is compatible with this support")
    if sol.shape[0] == 1:
        y = sol[0]
    else:
        rng = np.random.default_rng(seed)
        for _ in range(16):
            y = linalg.matmul(f, f.random(rng, (1, sol.shape[0])), sol)[0]
            if np.all(y):
                break
    if not np.all(y):
        raise NoMultiplier("every solution has a zero coordinate")
    return y.astype(ELEM)


def extend_shortened(partial: RecoveredKey, pk: qa.QdPublicKey, positions) -> RecoveredKey:
    """Fill in x_s, y_s for the shortened positions, one at a time."""
    f = pk.field
    unknown = sorted(int(i) for i in positions)
    if not unknown:
        return partial
    n = pk.n
    known = np.ones(n, dtype=bool)
    known[unknown] = False
    if partial.x.size != known.sum():
        raise ExtensionFailed("partial key does not match the shortened length")
    x = np.zeros(n, dtype=ELEM)
    y = np.zeros(n, dtype=ELEM)
    x[known] = partial.x
    y[known] = partial.y
    for k, s in enumerate(unknown):
        rest = unknown[k + 1 :]
        g = codes.shorten(pk.code, rest).gen
        cols = np.setdiff1d(np.arange(n), rest)
        mask = known[cols]
        at = int(np.searchsorted(cols, s))
        col = np.ascontiguousarray(g[:, at : at + 1])
        rhs_y = linalg.matmul(f, g[:, mask], y[cols[mask]].reshape(-1, 1))[:, 0]
        ys = linalg.solve(f, col, rhs_y)
        if ys is None or ys[0] == 0:
            raise ExtensionFailed(f"no multiplier entry fits position {s}")
        xy = f.mul(x[cols[mask]], y[cols[mask]])
        rhs_x = linalg.matmul(f, g[:, mask], xy.reshape(-1, 1))[:, 0]
        xys = linalg.solve(f, col, rhs_x)
        if xys is None:
            raise ExtensionFailed(f"no support entry fits position {s}")
        xs = f.div(xys[0], ys[0])
        if np.any(x[known] == xs):
            raise ExtensionFailed(f"support entry at position {s} repeats an earlier one")
        x[s], y[s] = xs, ys[0]
        known[s] = True
    return RecoveredKey(x, y, partial.r, partial.note)


def verify_key(rk: RecoveredKey, pk: qa.QdPublicKey) -> bool:
    if rk.x.size != pk.n or rk.y.size != pk.n:
        return False
    try:
        return qa.alternant(pk.field, rk.r, rk.x, rk.y) == pk.code
    except ValueError:
        return False


# -- driver ----------------------------------------------------------------------

def _finish(search: _Search, cand: NormTraceCandidate) -> RecoveredKey:
    pk = search.pk
    f = pk.field
    x = recover_support(cand)
    y = recover_multiplier(f, x, search.ambient, pk.r)
    first = len(cand.shortened_at)
    partial = RecoveredKey(x, y, pk.r, f"x[{first}]=0 x[{first + 1}]=1")
    return extend_shortened(partial, pk, cand.shortened_at)


def attack(pk: qa.QdPublicKey, cfg: AttackConfig) -> AttackReport:
    """Search, recover and verify; raises SearchExhausted when nothing verifies."""
    t0 = time.perf_counter()
    search = _Search(pk, cfg)
    failures = {"not_norm_trace": 0, "no_multiplier": 0, "extension_failed": 0, "verify_failed": 0}
    for cand in search.candidates():
        try:
            key = _finish(search, cand)
        except NotNormTrace:
            failures["not_norm_trace"] += 1
            continue
        except NoMultiplier:
            failures["no_multiplier"] += 1
            continue
        except ExtensionFailed:
            failures["extension_failed"] += 1
            continue
        if not verify_key(key, pk):
            failures["verify_failed"] += 1
            continue
        return AttackReport(cfg.variant, cfg.seed, search.trials, time.perf_counter() - t0,
                            key, True, failures)
    raise SearchExhausted(
        f"{cfg.variant} search exhausted after {search.trials} trials without a verified key",
        search.trials, failures)


def run_attack(pk: qa.QdPublicKey, cfg: AttackConfig) -> RecoveredKey:
    return attack(pk, cfg).key
