"""Named parameter sets (ell, gamma, n0, r0) for quasi-dyadic keys."""

from __future__ import annotations

from dataclasses import dataclass

from .attack import codimension_of_d, estimate_workfactor


@dataclass(frozen=True)
class ParamPreset:
    name: str
    ell: int
    gamma: int
    n0: int
    r0: int

    @property
    def q(self) -> int:
        return 1 << self.ell

    @property
    def block(self) -> int:
        return 1 << self.gamma

    @property
    def n(self) -> int:
        return self.n0 * self.block

    @property
    def r(self) -> int:
        return self.r0 * self.block

    @property
    def k(self) -> int:
        return self.n - 2 * self.r

    @property
    def k0(self) -> int:
        return self.n0 - 2 * self.r0

    @property
    def c(self) -> int:
        return codimension_of_d(self.q, self.gamma)

    @property
    def a0(self) -> int:
        """Blocks removed by the shortened search."""
        return self.k0 - self.c - 2

    def workfactor(self) -> float:
        return estimate_workfactor(self.n, self.q, self.gamma)


PRESETS = {
    p.name: p
    for p in (
        ParamPreset("DAGS_0", 4, 4, 15, 5),
        ParamPreset("DAGS_1", 5, 4, 52, 13),
        ParamPreset("DAGS_3", 6, 5, 38, 11),
        ParamPreset("DAGS_5", 6, 6, 33, 11),
        ParamPreset("TOY", 3, 3, 8, 2),
    )
}


def get_preset(name: str) -> ParamPreset:
    try:
        return PRESETS[name.upper()]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
