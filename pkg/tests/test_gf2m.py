import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import clmul_mod
from tzcodes.gf2m import (FieldError, FieldSpec, default_modulus, get_field, is_irreducible,
                          poly_mulmod)

SMALL_M = range(1, 8)


def test_default_moduli_match_examples():
    assert default_modulus(5) == 0x25
    assert default_modulus(7) == 0x83


def test_irreducibility_against_factor_scan():
    # brute force: no factor of degree 1..deg/2
    def by_division(p):
        deg = p.bit_length() - 1
        for f in range(2, 1 << (deg // 2 + 1)):
            if f.bit_length() - 1 < 1:
                continue
            r = p
            while r.bit_length() >= f.bit_length():
                r ^= f << (r.bit_length() - f.bit_length())
            if r == 0:
                return False
        return True
    for p in range(4, 1 << 11):
        assert is_irreducible(p) == by_division(p), hex(p)


def test_rejects_bad_modulus_and_generator():
    with pytest.raises(FieldError):
        FieldSpec(5, 0x21)  # x^5 + 1 is reducible
    with pytest.raises(FieldError):
        FieldSpec(5, 0x13)  # degree 4
    with pytest.raises(FieldError):
        FieldSpec(4, 0x13, generator=0b1111)  # order 5, not primitive
    with pytest.raises(FieldError):
        FieldSpec(0)


def test_worked_values(f5):
    assert f5.add(f5.w(5), f5.w(2)) == 1
    assert f5.w(1) ^ f5.w(2) ^ f5.w(3) == f5.w(12)
    assert f5.cube_root(f5.w(9)) == f5.w(3)
    assert f5.parse("w^12") == f5.parse("w12") == f5.w(12)
    assert f5.format(0) == "0" and f5.format(f5.w(7)) == "w^7"


@pytest.mark.parametrize("m", SMALL_M)
def test_multiplication_matches_shift_and_add(m):
    F = get_field(m)
    xs = np.arange(F.q)
    a, b = np.meshgrid(xs, xs)
    assert np.array_equal(F.vmul(a, b), clmul_mod(a, b, F.modulus, m))


@pytest.mark.parametrize("m", SMALL_M)
def test_field_axioms_exhaustive(m):
    F = get_field(m)
    xs = np.arange(F.q)
    a, b, c = (g.ravel() for g in np.meshgrid(xs, xs, xs, indexing="ij"))
    ab = F.vmul(a, b)
    assert np.array_equal(ab, F.vmul(b, a))
    assert np.array_equal(F.vmul(ab, c), F.vmul(a, F.vmul(b, c)))
    assert np.array_equal(F.vmul(a, b ^ c), ab ^ F.vmul(a, c))
    assert np.array_equal(F.vmul(xs, 1), xs)
    for x in range(1, F.q):
        assert F.mul(x, F.inv(x)) == 1
        assert F.div(F.mul(x, 7 % F.q or 1), x) == 7 % F.q or 1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


@pytest.mark.parametrize("m", SMALL_M)
def test_trace_linear_frobenius_invariant(m):
    F = get_field(m)
    xs = np.arange(F.q)
    tr = F.vtrace(xs)
    assert set(np.unique(tr)) <= {0, 1}
    a, b = np.meshgrid(xs, xs)
    assert np.array_equal(F.vtrace(a ^ b), F.vtrace(a) ^ F.vtrace(b))
    assert np.array_equal(F.vtrace(F.vmul(xs, xs)), tr)
    # sum of conjugates x + x^2 + ... + x^(2^(m-1)), through the oracle product
    acc, conj = np.zeros_like(xs), xs.copy()
    for _ in range(m):
        acc ^= conj
        conj = clmul_mod(conj, conj, F.modulus, m)
    assert np.array_equal(acc, tr)
    assert tr.sum() == F.q // 2


@pytest.mark.parametrize("m", [1, 3, 5, 7, 9])
def test_cube_root_odd_m(m):
    F = get_field(m)
    for x in range(F.q):
        r = F.cube_root(x)
        assert F.pow(r, 3) == x


def test_cube_root_even_m_refused():
    with pytest.raises(FieldError):
        get_field(6).cube_root(3)


def _scan_roots(F, c2, c1, c0):
    xs = np.arange(F.q)
    x2 = clmul_mod(xs, xs, F.modulus, F.m)
    vals = clmul_mod(x2, xs, F.modulus, F.m) ^ clmul_mod(x2, c2, F.modulus, F.m) \
        ^ clmul_mod(xs, c1, F.modulus, F.m) ^ c0
    return frozenset(int(x) for x in np.flatnonzero(vals == 0))


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7])
def test_depressed_cubic_against_scan_exhaustive(m):
    F = get_field(m)
    for p in range(F.q):
        for r in range(F.q):
            assert F.solve_cubic_depressed(p, r).roots == _scan_roots(F, 0, p, r)


@pytest.mark.parametrize("m", [3, 5])
def test_general_cubic_against_scan_exhaustive(m):
    F = get_field(m)
    for d1 in range(F.q):
        for d2 in range(F.q):
            for d3 in range(F.q):
                got = F.solve_cubic_general(d1, d2, d3)
                roots = _scan_roots(F, d1, d2, d3)
                assert got.roots == roots
                # a repeated root is a common root with the derivative x^2 + d2
                assert got.repeated == any(F.mul(x, x) == d2 for x in roots)


@pytest.mark.parametrize("m", [3, 5, 7])
def test_trace_criterion_consistency_exhaustive(m):
    F = get_field(m)
    xs = np.arange(F.q)
    x2 = clmul_mod(xs, xs, F.modulus, m)
    x3 = clmul_mod(x2, xs, F.modulus, m)
    for d1 in range(F.q):
        for d2 in range(F.q):
            # roots of x^3 + d1 x^2 + d2 x + d3, for every d3 at once
            f = x3 ^ clmul_mod(x2, d1, F.modulus, m) ^ clmul_mod(xs, d2, F.modulus, m)
            n_roots = np.bincount(f, minlength=F.q)
            for d3 in range(F.q):
                crit = F.cubic_trace_criterion(d1, d2, d3)
                if crit == 1:
                    assert n_roots[d3] == 1, (d1, d2, d3)
                elif crit == 0:
                    assert n_roots[d3] in (0, 3), (d1, d2, d3)


def test_general_cubic_random_m7(f7):
    rng = np.random.default_rng(7)
    for d1, d2, d3 in rng.integers(0, f7.q, (10_000, 3)).tolist():
        assert f7.solve_cubic_general(d1, d2, d3).roots == _scan_roots(f7, d1, d2, d3)


def test_m9_randomized_10k():
    F = get_field(9)
    rng = np.random.default_rng(9)
    a, b, c = rng.integers(0, F.q, (3, 10_000))
    assert np.array_equal(F.vmul(a, b), clmul_mod(a, b, F.modulus, 9))
    assert np.array_equal(F.vmul(F.vmul(a, b), c), F.vmul(a, F.vmul(b, c)))
    assert np.array_equal(F.vmul(a, b ^ c), F.vmul(a, b) ^ F.vmul(a, c))
    assert np.array_equal(F.vtrace(a ^ b), F.vtrace(a) ^ F.vtrace(b))
    assert np.array_equal(F.vtrace(F.vmul(a, a)), F.vtrace(a))
    xs = np.arange(F.q)
    x2 = F.vmul(xs, xs)
    x3 = F.vmul(x2, xs)
    for d1, d2, d3 in zip(a.tolist(), b.tolist(), c.tolist()):
        vals = x3 ^ F.vmul(x2, d1) ^ F.vmul(xs, d2) ^ d3
        n = int((vals == 0).sum())
        crit = F.cubic_trace_criterion(d1, d2, d3)
        assert len(F.solve_cubic_general(d1, d2, d3).roots) == n
        if crit == 1:
            assert n == 1
        elif crit == 0:
            assert n in (0, 3)


@given(st.integers(1, 12), st.data())
def test_pow_and_log_roundtrip(m, data):
    F = get_field(m)
    x = data.draw(st.integers(1, F.q - 1))
    k = data.draw(st.integers(-3 * F.q, 3 * F.q))
    assert F.pow(x, k) == F.pow(x, k % (F.q - 1))
    assert F.w(int(F.log[x])) == x
    assert poly_mulmod(x, F.inv(x), F.modulus) == 1


@given(st.integers(0, 31), st.integers(0, 31))
def test_field_element_operators(x, y):
    F = get_field(5)
    X, Y = F(x), F(y)
    assert int(X + Y) == x ^ y
    assert int(X * Y) == F.mul(x, y)
    assert X - Y == X + Y
    if y:
        assert (X / Y) * Y == X
    assert (X ** 31) == (F(1) if x else F(0))
    with pytest.raises(FieldError):
        X + get_field(7)(1)
