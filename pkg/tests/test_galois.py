import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import ref_of
from qdalt.errors import FieldRangeError, ZeroInverse
from qdalt.galois import (
    BASE,
    EXT,
    FieldElement,
    alpha_unit_trace,
    field_inv,
    field_mul,
    field_spec,
    from_hex,
    is_irreducible,
    make_field,
    norm2,
    smallest_irreducible,
    to_hex,
    trace2,
)

ELLS = [2, 3, 4, 5, 6]


def elems(ell):
    return st.integers(0, (1 << (2 * ell)) - 1)


@pytest.mark.parametrize("ell", range(2, 9))
def test_canonical_field_constants(ell):
    f = make_field(ell)
    expected_poly = {2: 0b111, 3: 0b1011, 4: 0b10011, 5: 0b100101,
                     6: 0b1000011, 7: 0b10000011, 8: 0b100011011}[ell]
    assert f.base_poly == expected_poly
    assert is_irreducible(f.base_poly)
    assert smallest_irreducible(ell) == expected_poly
    # the extension polynomial has no root in F_q
    rf = ref_of(f)
    assert all(rf.bmul(t, t) ^ t ^ f.ext_delta for t in range(f.q))


@pytest.mark.parametrize("ell", range(2, 9))
def test_product_table_matches_schoolbook(ell):
    f = make_field(ell)
    rf = ref_of(f)
    rng = np.random.default_rng(ell)
    a = f.random(rng, 400)
    b = f.random(rng, 400)
    got = f.mul(a, b)
    assert [int(v) for v in got] == [rf.mul(int(u), int(w)) for u, w in zip(a, b)]


def test_gf8_examples():
    f = make_field(3)
    z = 2
    # z^2 * z^2 = z^4 = z^2 + z  modulo z^3 + z + 1
    assert int(f.mul(f.mul(z, z), f.mul(z, z))) == 0b110
    assert int(f.inv(z)) == 0b101


def test_gf4_cube_roots():
    f = make_field(2)
    # omega^2 = omega + 1, so omega (omega + 1) = 1
    w = 2
    assert int(f.mul(w, w ^ 1)) == 1
    assert int(f.pow(w, 3)) == 1


@pytest.mark.parametrize("ell", ELLS)
def test_multiplicative_group_is_cyclic(ell):
    f = make_field(ell)
    powers = f.exp[: f.order]
    assert np.unique(powers).size == f.order
    assert 0 not in set(int(v) for v in powers)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ELLS), st.data())
def test_field_axioms(ell, data):
    f = make_field(ell)
    a, b, c = (data.draw(elems(ell)) for _ in range(3))
    mul = lambda u, v: int(f.mul(u, v))  # noqa: E731
    assert mul(a, b) == mul(b, a)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b ^ c) == mul(a, b) ^ mul(a, c)
    assert mul(a, 1) == a and mul(a, 0) == 0
    if a:
        assert mul(a, int(f.inv(a))) == 1
        assert int(f.div(mul(a, b), a)) == b


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(ELLS), st.data())
def test_frobenius_trace_norm(ell, data):
    f = make_field(ell)
    rf = ref_of(f)
    a, b = data.draw(elems(ell)), data.draw(elems(ell))
    fa = int(f.frobenius(a))
    assert fa == rf.frob(a)
    assert int(f.frobenius(fa)) == a
    assert int(f.frobenius(int(f.mul(a, b)))) == int(f.mul(fa, int(f.frobenius(b))))
    tr, nm = int(f.trace(a)), int(f.norm(a))
    assert tr == a ^ fa and tr < f.q
    assert nm == rf.mul(a, fa) and nm < f.q
    assert int(f.trace(a ^ b)) == tr ^ int(f.trace(b))
    # F_q is fixed by Frobenius exactly
    assert (fa == a) == bool(f.in_subfield(a))


@pytest.mark.parametrize("ell", ELLS)
def test_trace_and_norm_are_surjective(ell):
    f = make_field(ell)
    allx = np.arange(f.qsq)
    tr = f.trace(allx)
    nm = f.norm(allx)
    # each value of Tr is hit q times, each nonzero norm q + 1 times
    assert np.all(np.bincount(tr, minlength=f.q) == f.q)
    counts = np.bincount(nm, minlength=f.q)
    assert counts[0] == 1 and np.all(counts[1:] == f.q + 1)


@pytest.mark.parametrize("ell", ELLS)
def test_pow_matches_repeated_product(ell):
    f = make_field(ell)
    rf = ref_of(f)
    rng = np.random.default_rng(1)
    for a in f.random(rng, 20):
        for e in (0, 1, 2, 5, f.q, f.order, f.order + 3):
            want = rf.pow(int(a), e % f.order) if a else (1 if e == 0 else 0)
            if a and e % f.order == 0:
                want = 1
            assert int(f.pow(a, e)) == want


def test_split_join_roundtrip(fields):
    f = fields[5]
    a = np.arange(f.qsq)
    u, v = f.split(a)
    assert np.all(u < f.q) and np.all(v < f.q)
    assert np.array_equal(f.join(u, v), a)
    # a = u + alpha v
    assert np.array_equal(u ^ f.mul(f.alpha, v), a)


def test_alpha_has_unit_trace(fields):
    for f in fields.values():
        a = alpha_unit_trace(f)
        assert int(trace2(f, a)) == 1
        assert not a.in_subfield()


def test_field_element_wrapper(fields):
    f = fields[4]
    a = f.element(0x37)
    b = f.element(0x5)
    assert a.level == EXT and b.level == BASE
    assert int(field_mul(f, a, b)) == int(f.mul(0x37, 0x5))
    assert (b * b).level == BASE
    assert int(field_mul(f, a, field_inv(f, a))) == 1
    assert (a / a).value == 1
    assert (a ** -1).value == field_inv(f, a).value
    assert int(norm2(f, a)) == int(f.norm(0x37))
    assert (a + a).value == 0
    assert a.hex() == "37"


def test_errors(fields):
    f = fields[3]
    with pytest.raises(ZeroInverse):
        f.inv(0)
    with pytest.raises(ZeroInverse):
        f.element(0).inverse()
    with pytest.raises(FieldRangeError):
        f.element(64)
    with pytest.raises(FieldRangeError):
        FieldElement(f, 9, BASE)
    with pytest.raises(FieldRangeError):
        make_field(1)
    with pytest.raises(FieldRangeError):
        make_field(9)
    with pytest.raises(FieldRangeError):
        field_spec(3, 0b1111, 1)  # reducible
    with pytest.raises(FieldRangeError):
        field_spec(3, 0b1011, 0)  # y^2 + y splits


def test_hex_roundtrip():
    v = np.array([0, 1, 0xab, 0xff], dtype=np.uint16)
    assert to_hex(v) == "0 1 ab ff"
    assert np.array_equal(from_hex(to_hex(v).split()), v)


def test_table_cache_dir(tmp_path, monkeypatch):
    from qdalt import galois

    monkeypatch.setenv("QDALT_TABLE_DIR", str(tmp_path))
    log, exp = galois._load_tables(4, 0b10011, 8)
    assert list(tmp_path.iterdir())
    log2, exp2 = galois._load_tables(4, 0b10011, 8)
    assert np.array_equal(log, log2) and np.array_equal(exp, exp2)
