"""The bilinear system in (U, A, T) whose solutions give D and the support.

Rows of G(U) = (I | U) G_inv span the candidate D inside the invariant code
of the shortened public code, and every row of R(U) = G(U) * H must be
orthogonal to the support.  The support is written block by block as
T_t + sum of A_k over the set bits of the position inside the block, with
T_1 = 0 and A_1 = 1.  Solving the system is left to external tools.

File format::

    QDPOLY1
    field q=<q> qsq=<q^2>
    vars U=<count> A=<count> T=<count>
    <one equation per line: '+'-separated monomials such as 3a*U1_2*T4>
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import TextIO

import numpy as np

from . import codes
from . import qd_alternant as qa
from .attack import codimension_of_d
from .errors import ParameterInfeasible, ParseError
from .galois import FieldSpec

MAGIC = "QDPOLY1"

Monomial = tuple[str, ...]


@dataclass(eq=False)
class PolySystem:
    field: FieldSpec = dc_field(repr=False)
    u_vars: list[str]
    a_vars: list[str]
    t_vars: list[str]
    equations: list[dict[Monomial, int]] = dc_field(repr=False)
    substitutions: tuple[str, ...] = ("T1=0", "A1=1")
    shortened_blocks: int = 0

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.u_vars), len(self.a_vars), len(self.t_vars)

    def lines(self) -> list[str]:
        f = self.field
        u, a, t = self.counts
        out = [MAGIC, f"field q={f.q} qsq={f.qsq}", f"vars U={u} A={a} T={t}"]
        out += [format_equation(eq) for eq in self.equations]
        return out

    def to_text(self) -> str:
        return "\n".join(self.lines()) + "\n"


def format_equation(eq: dict[Monomial, int]) -> str:
    terms = []
    for mono, coef in eq.items():
        terms.append("*".join([f"{coef:x}", *mono]))
    return "+".join(terms)


def _linear_parts(w: np.ndarray, n0: int, gamma: int) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients of T_t (per block) and A_k (k = 1..gamma) in sum_i w_i X_i."""
    b = 1 << gamma
    blocks = w.reshape(w.shape[0], n0, b)
    t_coef = np.bitwise_xor.reduce(blocks, axis=2)
    idx = np.arange(b)
    a_coef = np.stack([
        np.bitwise_xor.reduce(blocks[:, :, (idx >> k) & 1 == 1].reshape(w.shape[0], -1), axis=1)
        for k in range(gamma)
    ], axis=1)
    return t_coef, a_coef


def emit_polysys(pk: qa.QdPublicKey, out: TextIO | str | Path | None = None) -> PolySystem:
    f = pk.field
    gamma = pk.gamma
    if (1 << gamma) > f.q:
        raise ParameterInfeasible("the system needs |G| <= q")
    c = codimension_of_d(f.q, gamma)
    a0 = pk.k0 - c - 2
    if a0 < 0:
        raise ParameterInfeasible(f"k0 - c - 2 = {a0} < 0")
    cs = codes.shorten(pk.code, range(a0 << gamma))
    n0 = pk.n0 - a0
    ginv = qa.punctured_invariant(cs, gamma).gen
    d = ginv.shape[0] - c
    if d < 1:
        raise ParameterInfeasible("invariant code of the shortened key is too small")
    g = qa.unfold(ginv, gamma)
    h = codes.parity_check(cs)

    u_names = [[f"U{a + 1}_{j + 1}" for j in range(c)] for a in range(d)]
    a_names = [f"A{k + 1}" for k in range(gamma)]
    t_names = [f"T{t + 1}" for t in range(n0)]

    # per row of G: linear parts of (g_row * h_b) . X for every parity-check row b
    parts = [_linear_parts(f.mul(g[i][None, :], h), n0, gamma) for i in range(g.shape[0])]

    equations = []
    for a in range(d):
        for b in range(h.shape[0]):
            eq: dict[Monomial, int] = {}

            def add(prefix: Monomial, t_coef, a_coef):
                # A_1 = 1 turns its coefficient into the constant of this form
                if a_coef[0]:
                    eq[prefix] = eq.get(prefix, 0) ^ int(a_coef[0])
                for k in range(1, gamma):
                    if a_coef[k]:
                        eq[prefix + (a_names[k],)] = int(a_coef[k])
                for t in range(1, n0):
                    if t_coef[t]:
                        eq[prefix + (t_names[t],)] = int(t_coef[t])

            t0, a0c = parts[a]
            add((), t0[b], a0c[b])
            for j in range(c):
                tj, aj = parts[d + j]
                add((u_names[a][j],), tj[b], aj[b])
            eq = {m: v for m, v in eq.items() if v}
            if eq:
                equations.append(eq)

    system = PolySystem(f, [u for row in u_names for u in row], a_names[1:], t_names[1:],
                        equations, shortened_blocks=a0)
    if out is not None:
        text = system.to_text()
        if isinstance(out, (str, Path)):
            Path(out).write_text(text)
        else:
            out.write(text)
    return system


def parse_polysys(text: str, path=None) -> tuple[dict[str, int], list[list[tuple[int, Monomial]]]]:
    """Variable counts and equations (lists of (coefficient, monomial))."""
    lines = text.splitlines()
    if not lines or lines[0] != MAGIC:
        raise ParseError(f"missing {MAGIC} header", 1, path)
    if len(lines) < 3 or not lines[1].startswith("field ") or not lines[2].startswith("vars "):
        raise ParseError("expected 'field' and 'vars' lines", 2, path)
    try:
        counts = {k: int(v) for k, v in (t.split("=") for t in lines[2].split()[1:])}
    except ValueError:
        raise ParseError("bad variable counts", 3, path) from None
    eqs = []
    for i, line in enumerate(lines[3:], 4):
        eq = []
        for term in line.split("+"):
            head, *mono = term.split("*")
            try:
                eq.append((int(head, 16), tuple(mono)))
            except ValueError:
                raise ParseError(f"bad coefficient {head!r}", i, path) from None
        eqs.append(eq)
    return counts, eqs


def monomial_shape(mono: Monomial) -> str:
    """Variable letters of a monomial in sorted order, e.g. 'AU' for U1_1*A2."""
    return "".join(sorted(v[0] for v in mono))

