import random

import numpy as np
import pytest
from hypothesis import given

from ffprimes.errors import DivideByZero, InvalidInput, NotPrime, ZeroPolynomial
from ffprimes.ffpoly import (Poly, count_irreducible, enumerate_below, enumerate_monic, factor,
                             field_make, field_of_order, gcd, int_mobius, inverse_mod, is_irreducible,
                             poly_arith, powmod, xgcd)
from ffprimes.ffpoly.factor import squarefree_decomposition
from ffprimes.ffpoly.tables import count_irreducible_sieve, irreducible_flags, irreducible_polys, mobius_table
from ffprimes.ffpoly.vector import AffineMap

from conftest import FIELD_ORDERS, P, polys

# Monic irreducible counts by degree 1..12, from the necklace sum evaluated by hand
NECKLACE = {
    2: [2, 1, 2, 3, 6, 9, 18, 30, 56, 99, 186, 335],
    3: [3, 3, 8, 18, 48, 116, 312, 810, 2184, 5880, 16104, 44220],
    5: [5, 10, 40, 150, 624, 2580, 11160, 48750, 217000, 976248, 4438920, 20343700],
}


def trial_division_irreducible(f):
    """Independent oracle: no monic factor of degree 1..deg f // 2."""
    if f.degree < 1:
        return False
    for d in range(1, f.degree // 2 + 1):
        for g in enumerate_monic(f.field, d):
            if (f % g).is_zero():
                return False
    return True


# --- fields -----------------------------------------------------------------

def test_field_make_prime_fields():
    assert field_make(2, 1).q == 2
    assert field_make(3, 1).q == 3


def test_field_make_f4_modulus():
    F4 = field_make(2, 2)
    assert F4.q == 4
    assert tuple(F4.modulus) == (1, 1, 1)


def test_field_make_rejects_composite():
    with pytest.raises(NotPrime):
        field_make(6, 1)
    with pytest.raises(NotPrime):
        field_of_order(12)


@pytest.mark.parametrize("q", FIELD_ORDERS)
def test_field_axioms(q):
    F = field_of_order(q)
    for a in range(q):
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in range(q):
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            for c in range(q):
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("q", (4, 8, 9, 25, 27))
def test_extension_modulus_is_lowest_irreducible(q):
    F = field_of_order(q)
    Fp = field_of_order(F.p)
    modulus = Poly(Fp, F.modulus)
    assert is_irreducible(modulus)
    for g in enumerate_monic(Fp, F.e):
        if g.index() < modulus.index():
            assert not trial_division_irreducible(g)


# --- arithmetic ---------------------------------------------------------------

def test_spec_arithmetic_examples(F2, F3):
    assert P(F2, "1,1") * P(F2, "1,1") == P(F2, "1,0,1")
    assert poly_arith(P(F2, "1,0,1"), P(F2, "1,1"), "gcd") == P(F2, "1,1")
    assert poly_arith(P(F3, "0,0,1"), P(F3, "1,1"), "divrem") == (P(F3, "2,1"), P(F3, "1"))


def test_divide_by_zero(F2):
    with pytest.raises(DivideByZero):
        divmod(P(F2, "1,1"), Poly.zero(F2))
    with pytest.raises(DivideByZero):
        poly_arith(P(F2, "1"), Poly.zero(F2), "divrem")


def test_text_format(F2):
    assert P(F2, "1,1,1").text() == "1,1,1"
    assert Poly.zero(F2).text() == "0"
    F4 = field_of_order(4)
    f = Poly(F4, [3, 0, 1])
    assert f.text() == "1/1,0/0,1/0"
    assert Poly.parse(F4, f.text()) == f


def test_coefficient_range_checked(F2):
    with pytest.raises(InvalidInput):
        Poly(F2, [2])


@pytest.mark.parametrize("q", FIELD_ORDERS)
def test_ring_axioms(q):
    F = field_of_order(q)

    @given(polys(F, 6), polys(F, 6), polys(F, 6))
    def check(a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == Poly.zero(F)
        if not a.is_zero() and not b.is_zero():
            assert (a * b).degree == a.degree + b.degree

    check()


@pytest.mark.parametrize("q", (2, 3, 9))
def test_divmod_and_gcd_properties(q):
    F = field_of_order(q)

    @given(polys(F, 10), polys(F, 6, nonzero=True))
    def check(a, b):
        quo, rem = divmod(a, b)
        assert quo * b + rem == a
        assert rem.degree < b.degree
        g = gcd(a, b)
        assert g.is_monic()
        assert (a % g).is_zero() and (b % g).is_zero()
        d, u, v = xgcd(a, b)
        assert d == g and u * a + v * b == g

    check()


def test_gcd_with_zero_is_monic(F3):
    a = P(F3, "1,2,2")
    assert gcd(a, Poly.zero(F3)) == a.monic()


def test_karatsuba_matches_schoolbook():
    F = field_of_order(3)
    rng = random.Random(7)
    a = Poly(F, [rng.randrange(3) for _ in range(150)])
    b = Poly(F, [rng.randrange(3) for _ in range(140)])
    # schoolbook on coefficient lists as the oracle
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        for j, y in enumerate(b.coeffs):
            out[i + j] = (out[i + j] + x * y) % 3
    assert (a * b) == Poly(F, out)


@pytest.mark.parametrize("q", (2, 3, 4, 9))
def test_frobenius_identity(q):
    F = field_of_order(q)
    p = F.p

    @given(polys(F, 6))
    def check(f):
        lhs = f**p
        cs = [0] * (p * len(f.coeffs))
        for i, c in enumerate(f.coeffs):
            cs[i * p] = F.pow(c, p)
        rhs = Poly(F, cs)
        assert lhs == rhs

    check()


def test_powmod_and_inverse(F3):
    m = P(F3, "1,0,2,1")
    f = P(F3, "2,1")
    assert powmod(f, 10, m) == (f**10) % m
    inv = inverse_mod(f, m)
    assert ((inv * f) % m) == Poly.one(F3)
    assert inverse_mod(P(F3, "0,1"), P(F3, "0,0,1")) is None


# --- enumeration ----------------------------------------------------------------

def test_enumerate_monic_examples(F2, F3):
    assert [f.text() for f in enumerate_monic(F2, 1)] == ["0,1", "1,1"]
    assert [f.text() for f in enumerate_monic(F2, 0)] == ["1"]
    assert [f.text() for f in enumerate_monic(F3, 1)] == ["0,1", "1,1", "2,1"]


@pytest.mark.parametrize("q,d", [(2, 5), (3, 3), (4, 2)])
def test_enumerate_monic_partition(q, d):
    F = field_of_order(q)
    full = list(enumerate_monic(F, d))
    assert len(full) == q**d and len(set(full)) == q**d
    assert all(f.is_monic() and f.degree == d for f in full)
    cut = q**d // 3
    assert list(enumerate_monic(F, d, 0, cut)) + list(enumerate_monic(F, d, cut)) == full


def test_enumerate_below_is_index_order(F3):
    got = list(enumerate_below(F3, 3))
    assert [f.index() for f in got] == list(range(27))


def test_index_round_trip():
    F = field_of_order(5)
    for idx in range(0, 5000, 37):
        assert Poly.from_index(F, idx).index() == idx


# --- irreducibility and factorization ---------------------------------------------

def test_irreducibility_examples(F2):
    assert is_irreducible(P(F2, "1,1,1"))
    assert not is_irreducible(P(F2, "0,0,1"))
    assert not is_irreducible(P(F2, "1,0,1"))
    assert not is_irreducible(P(F2, "1"))
    with pytest.raises(ZeroPolynomial):
        is_irreducible(Poly.zero(F2))


@pytest.mark.parametrize("q,dmax", [(2, 8), (3, 5), (4, 4), (5, 3)])
def test_rabin_matches_trial_division(q, dmax):
    F = field_of_order(q)
    for d in range(1, dmax + 1):
        for f in enumerate_monic(F, d):
            assert is_irreducible(f) == trial_division_irreducible(f), f


@pytest.mark.parametrize("q", (2, 3, 4, 5))
def test_counts_scan_equals_formula(q):
    F = field_of_order(q)
    for d in range(1, 8 if q <= 3 else 6):
        scanned = sum(1 for f in enumerate_monic(F, d) if is_irreducible(f))
        assert scanned == count_irreducible(q, d)


@pytest.mark.parametrize("q", (2, 3, 5))
def test_count_irreducible_frozen(q):
    assert [count_irreducible(q, d) for d in range(1, 13)] == NECKLACE[q]


def test_count_examples():
    assert count_irreducible(2, 2) == 1
    assert count_irreducible(2, 4) == 3
    assert count_irreducible(3, 1) == 3


def test_int_mobius():
    assert [int_mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_factor_examples(F2):
    assert factor(P(F2, "1,0,1")).factors == ((P(F2, "1,1"), 2),)
    assert factor(P(F2, "0,1,1")).factors == ((P(F2, "0,1"), 1), (P(F2, "1,1"), 1))
    assert factor(P(F2, "1,0,1,1")).factors == ((P(F2, "1,0,1,1"), 1),)
    with pytest.raises(ZeroPolynomial):
        factor(Poly.zero(F2))


@pytest.mark.parametrize("q", FIELD_ORDERS)
def test_factor_reassembles(q):
    F = field_of_order(q)

    @given(polys(F, 14, nonzero=True))
    def check(f):
        fac = factor(f)
        assert fac.expand(F) == f
        keys = [P_.sort_key() for P_, _ in fac.factors]
        assert keys == sorted(set(keys))
        for P_, e in fac.factors:
            assert P_.is_monic() and is_irreducible(P_) and e >= 1

    check()


def test_factor_random_bulk():
    rng = random.Random(2024)
    for q in (2, 3, 4, 5):
        F = field_of_order(q)
        for _ in range(500):
            f = Poly(F, [rng.randrange(q) for _ in range(rng.randrange(1, 20))])
            if f.is_zero():
                continue
            assert factor(f).expand(F) == f


def test_squarefree_decomposition_with_pth_powers():
    F = field_of_order(3)
    f = P(F, "1,1") ** 3 * P(F, "0,1") ** 2 * P(F, "1,0,1")
    parts = squarefree_decomposition(f)
    prod = Poly.one(F)
    for g, e in parts:
        prod = prod * g**e
    assert prod == f.monic()


# --- sieved tables -------------------------------------------------------------

@pytest.mark.parametrize("q,d", [(2, 8), (3, 5), (4, 4), (9, 2)])
def test_irreducible_flags_match_rabin(q, d):
    F = field_of_order(q)
    flags = irreducible_flags(F, d)
    for i, f in enumerate(enumerate_monic(F, d)):
        assert bool(flags[i]) == is_irreducible(f)


@pytest.mark.parametrize("q,d", [(2, 9), (3, 6), (4, 4)])
def test_mobius_table_matches_factor(q, d):
    F = field_of_order(q)
    table = mobius_table(F, d)
    for i, f in enumerate(enumerate_monic(F, d)):
        fac = factor(f)
        expected = 0 if any(e > 1 for _, e in fac) else (-1) ** len(fac)
        assert table[i] == expected


def test_sieve_count_and_polys():
    F = field_of_order(2)
    assert count_irreducible_sieve(F, 10) == 99
    assert [f.text() for f in irreducible_polys(F, 3)] == ["1,1,0,1", "1,0,1,1"]


# --- vector maps -------------------------------------------------------------

@pytest.mark.parametrize("q", (2, 3, 4))
def test_affine_map_matches_polynomial_evaluation(q):
    F = field_of_order(q)
    a, b, c = P(F, "1,1"), P(F, "0,1"), P(F, "1,0,1")
    amap = AffineMap.from_poly_function(F, [3, 2], 5, lambda xs: a * xs[0] + b * xs[1] + c)
    xs0 = np.arange(q**3)
    for x1 in range(q**2):
        got = amap(xs0, np.full(q**3, x1))
        for i in range(q**3):
            want = a * Poly.from_index(F, i) + b * Poly.from_index(F, x1) + c
            assert got[i] == want.index()
