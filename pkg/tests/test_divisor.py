import math
import random

import pytest
from hypothesis import given

from ffprimes.divisor import CurveModel, Divisor, divisor_of, divisors_below, lattice, mobius
from ffprimes.errors import InvalidInput, PoleAt, ZeroPolynomial
from ffprimes.ffpoly import Poly, enumerate_monic, field_of_order
from ffprimes.zeta import euler_truncated, zeta_closed, zeta_residue

from conftest import P, polys


def D(F, mapping):
    return Divisor.from_map(F, {P(F, k): v for k, v in mapping.items()})


def test_divisor_of_examples(F2, F3):
    assert divisor_of(P(F2, "0,1,1")) == D(F2, {"0,1": 1, "1,1": 1})
    assert divisor_of(P(F2, "1")).is_zero()
    assert divisor_of(P(F3, "2,2")) == D(F3, {"1,1": 1})
    with pytest.raises(ZeroPolynomial):
        divisor_of(Poly.zero(F2))


def test_from_map_rejects_reducible(F2):
    with pytest.raises(InvalidInput):
        D(F2, {"1,0,1": 1})


def test_degree_and_norm(F3):
    d = D(F3, {"0,1": 2, "1,0,1": 1})
    assert d.degree == 4
    assert d.norm == 81


def test_mobius_examples(F2):
    assert mobius(Divisor.zero(F2)) == 1
    assert mobius(divisor_of(P(F2, "0,0,1"))) == 0
    assert mobius(divisor_of(P(F2, "0,1,1"))) == 1
    assert mobius(divisor_of(P(F2, "1,1,1"))) == -1


def test_lattice_examples(F2):
    a = D(F2, {"0,1": 1})
    b = D(F2, {"0,1": 2, "1,1": 1})
    assert lattice(a, b, "leq") is True
    assert lattice(b, a, "leq") is False
    assert lattice(a, D(F2, {"1,1": 1}), "lcm") == D(F2, {"0,1": 1, "1,1": 1})
    assert lattice(D(F2, {"0,1": 2}), D(F2, {"0,1": 1, "1,1": 3}), "meet") == a
    with pytest.raises(InvalidInput):
        lattice(a, b, "join")


def test_divisors_below_examples(F2):
    z = Divisor.zero(F2)
    assert list(divisors_below(z)) == [z]
    a = D(F2, {"0,1": 1})
    assert list(divisors_below(a)) == [z, a]
    assert len(list(divisors_below(D(F2, {"0,1": 1, "1,1": 1})))) == 4


def test_text_round_trip(F2):
    d = D(F2, {"0,1": 2, "1,1,1": 1})
    assert d.text() == "0,1^2;1,1,1^1"
    assert Divisor.parse(F2, d.text()) == d
    assert Divisor.parse(F2, Divisor.zero(F2).text()).is_zero()


@pytest.mark.parametrize("q", (2, 3, 4))
def test_divisor_homomorphism(q):
    F = field_of_order(q)

    @given(polys(F, 8, nonzero=True), polys(F, 8, nonzero=True))
    def check(f, g):
        assert divisor_of(f * g) == divisor_of(f) + divisor_of(g)
        assert divisor_of(f).generator() == f.monic()

    check()


@pytest.mark.parametrize("q", (2, 3))
def test_mobius_multiplicative_on_coprime(q):
    F = field_of_order(q)

    @given(polys(F, 7, nonzero=True), polys(F, 7, nonzero=True))
    def check(f, g):
        a, b = divisor_of(f), divisor_of(g)
        if lattice(a, b, "meet").is_zero():
            assert mobius(a + b) == mobius(a) * mobius(b)

    check()


@pytest.mark.parametrize("q,nmax", [(2, 8), (3, 6)])
def test_mertens_identity(q, nmax):
    F = field_of_order(q)
    for n in range(2, nmax + 1):
        assert sum(mobius(divisor_of(f)) for f in enumerate_monic(F, n)) == 0


def test_divisors_below_count_and_order():
    F = field_of_order(3)
    rng = random.Random(3)
    for _ in range(30):
        f = Poly(F, [rng.randrange(3) for _ in range(rng.randrange(2, 9))])
        if f.is_zero():
            continue
        d = divisor_of(f)
        below = list(divisors_below(d))
        assert len(below) == math.prod(e + 1 for _, e in d.primes)
        assert len(set(below)) == len(below)
        assert all(lattice(m, d, "leq") for m in below)


def test_curve_model_validation(F2):
    assert CurveModel(F2).g == Poly.one(F2)
    assert CurveModel(F2, P(F2, "0,1,1")).box_degree(5) == 7
    with pytest.raises(InvalidInput):
        CurveModel(F2, P(F2, "0,0,1"))
    with pytest.raises(InvalidInput):
        CurveModel(F2, extension_degree=2)


# --- zeta -------------------------------------------------------------------

def test_zeta_closed_examples():
    assert zeta_closed(2, 2) == pytest.approx(2, abs=1e-15)
    assert zeta_closed(2, 3) == pytest.approx(1.5, abs=1e-15)
    with pytest.raises(PoleAt):
        zeta_closed(1, 2)
    with pytest.raises(PoleAt):
        zeta_closed(1 + 2j * math.pi / math.log(2), 2)


def test_zeta_residue_examples():
    assert zeta_residue(2) == pytest.approx(1.4426950408889634, rel=1e-15)
    assert zeta_residue(3) == pytest.approx(1 / math.log(3), rel=1e-15)
    for q in (2, 3, 5):
        z = 1 + 1e-6
        assert ((z - 1) * zeta_closed(z, q)).real == pytest.approx(zeta_residue(q), rel=1e-5)


def test_residue_richardson():
    q = 2
    h = [1e-3, 1e-4, 1e-5]
    vals = [((hh) * zeta_closed(1 + hh, q)).real for hh in h]
    # error is linear in h, so the extrapolation removes it
    extrap = vals[2] + (vals[2] - vals[1]) * (h[2] / (h[1] - h[2]))
    assert abs(extrap - zeta_residue(q)) < abs(vals[2] - zeta_residue(q))
    assert abs(extrap - zeta_residue(q)) < 1e-8


def test_euler_truncated_examples():
    assert euler_truncated(2, 1, 2) == pytest.approx(16 / 9, rel=1e-14)
    assert euler_truncated(2, 0, 5) == 1
    assert abs(euler_truncated(2, 12, 2) - 2) <= 1e-3


def test_euler_error_monotone():
    for q in (2, 3):
        errs = [abs(euler_truncated(2.0, B, q) - zeta_closed(2.0, q)) for B in range(1, 15)]
        assert all(b < a for a, b in zip(errs, errs[1:]))


def test_zeta_conjugate_symmetry():
    rng = random.Random(11)
    for _ in range(50):
        z = complex(rng.uniform(1.1, 4), rng.uniform(-10, 10))
        assert zeta_closed(z.conjugate(), 3) == pytest.approx(zeta_closed(z, 3).conjugate(), rel=1e-13)
        assert euler_truncated(z.conjugate(), 6, 3) == pytest.approx(euler_truncated(z, 6, 3).conjugate(),
                                                                    rel=1e-13)
