import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import RefField  # noqa: E402

from qdalt import codes  # noqa: E402
from qdalt import qd_alternant as qa  # noqa: E402
from qdalt.galois import BASE, EXT, make_field  # noqa: E402


@pytest.fixture(scope="session")
def fields():
    return {ell: make_field(ell) for ell in range(2, 9)}


def ref_of(f):
    return RefField(f.ell, f.base_poly, f.ext_delta)


def random_support(f, n, rng):
    return rng.choice(f.qsq, n, replace=False).astype(np.uint16)


def random_code(f, level, n, k, rng):
    """A random code of dimension <= k (rows drawn uniformly)."""
    return codes.from_generator(f, level, f.random(rng, (k, n), level=level), n=n)


_keys = {}


def toy_key(seed):
    """Cached TOY key pair (q = 8, |G| = 8, n0 = 8, r0 = 2)."""
    if seed not in _keys:
        _keys[seed] = qa.qd_keygen(make_field(3), 3, 8, 2, seed)
    return _keys[seed]


__all__ = ["BASE", "EXT", "random_support", "random_code", "ref_of", "toy_key"]
