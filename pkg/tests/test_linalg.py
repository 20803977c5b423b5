import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import ref_of
from oracles import ref_rank
from qdalt import linalg
from qdalt.errors import DimensionMismatch
from qdalt.galois import make_field


def rand_mat(f, rng, rows, cols, rank=None):
    if rank is None:
        return f.random(rng, (rows, cols))
    a = f.random(rng, (rows, rank))
    b = f.random(rng, (rank, cols))
    return linalg.matmul(f, a, b)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.integers(1, 7), st.integers(1, 9),
       st.integers(0, 6), st.integers(0, 2**32 - 1))
def test_rank_matches_reference(ell, rows, cols, r, seed):
    f = make_field(ell)
    rng = np.random.default_rng(seed)
    m = rand_mat(f, rng, rows, cols, min(r, rows, cols))
    assert linalg.rank(f, m) == ref_rank(ref_of(f), m.tolist())


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 8), st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_rref_shape_and_kernel(ell, rows, cols, seed):
    f = make_field(ell)
    rng = np.random.default_rng(seed)
    m = rand_mat(f, rng, rows, cols, min(rows, cols, 1 + seed % 4))
    r, piv = linalg.rref(f, m)
    assert r.shape[0] == len(piv) == linalg.rank(f, m)
    assert piv == sorted(piv)
    for i, p in enumerate(piv):
        col = r[:, p]
        assert col[i] == 1 and np.count_nonzero(col) == 1
        assert not r[i, :p].any()
    k = linalg.right_kernel(f, m)
    assert k.shape[0] == cols - r.shape[0]
    assert linalg.is_zero(linalg.matmul(f, m, k.T))
    assert linalg.rank(f, k) == k.shape[0]
    # same row space
    assert linalg.rank(f, np.vstack([r, m])) == r.shape[0]


def test_inputs_are_not_mutated():
    f = make_field(3)
    m = f.random(np.random.default_rng(0), (4, 6))
    keep = m.copy()
    linalg.rref(f, m)
    linalg.rank(f, m)
    linalg.right_kernel(f, m)
    assert np.array_equal(m, keep)


def test_matmul_reference():
    f = make_field(4)
    rf = ref_of(f)
    rng = np.random.default_rng(3)
    a = f.random(rng, (5, 7))
    b = f.random(rng, (7, 3))
    c = linalg.matmul(f, a, b)
    for i in range(5):
        for j in range(3):
            acc = 0
            for t in range(7):
                acc ^= rf.mul(int(a[i, t]), int(b[t, j]))
            assert c[i, j] == acc


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_solve(rows, cols, seed):
    f = make_field(3)
    rng = np.random.default_rng(seed)
    m = rand_mat(f, rng, rows, cols, min(rows, cols, 1 + seed % 3))
    v = f.random(rng, cols)
    b = linalg.matmul(f, m, v.reshape(-1, 1))[:, 0]
    sol = linalg.solve(f, m, b)
    assert sol is not None
    assert np.array_equal(linalg.matmul(f, m, sol.reshape(-1, 1))[:, 0], b)


def test_solve_inconsistent():
    f = make_field(3)
    m = np.array([[1, 2], [2, 4]], dtype=np.uint16)  # second row = z * first
    assert linalg.solve(f, m, [1, 1]) is None
    with pytest.raises(DimensionMismatch):
        linalg.solve(f, m, [1, 1, 1])


def test_rowspace_intersect():
    f = make_field(3)
    rng = np.random.default_rng(5)
    common = f.random(rng, (2, 10))
    a = np.vstack([common, f.random(rng, (3, 10))])
    b = np.vstack([common, f.random(rng, (3, 10))])
    inter = linalg.rowspace_intersect(f, a, b)
    assert inter.shape[0] == 2
    assert linalg.rank(f, np.vstack([inter, common])) == 2


def test_degenerate_shapes():
    f = make_field(2)
    z = np.zeros((0, 4), dtype=np.uint16)
    assert linalg.rank(f, z) == 0
    assert linalg.right_kernel(f, z).shape == (4, 4)
    assert linalg.rref(f, np.zeros((3, 4), dtype=np.uint16))[0].shape == (0, 4)
    with pytest.raises(DimensionMismatch):
        linalg.matmul(f, np.ones((2, 3), dtype=np.uint16), np.ones((2, 3), dtype=np.uint16))
    with pytest.raises(DimensionMismatch):
        linalg.as_mat(np.zeros((2, 2, 2)))
