import time

import pytest

from ffprimes.errors import AlphaNotCoprime, BudgetExceeded, InvalidInput, ZeroModulus
from ffprimes.ffpoly import Poly, count_irreducible, enumerate_below, factor, field_of_order, is_irreducible
from ffprimes.patterns import (TruncatedClass, collect, enumerate_class, is_prime_class, search,
                               search_in_class)

from conftest import P


def brute_prime_classes(F, deg_m_max, deg_a_max, s):
    """Oracle: every (a, m) under the degree guard, tested by trial of every element."""
    found = set()
    for dm in range(1, deg_m_max + 1):
        for m in (Poly.from_index(F, i) for i in range(F.q**dm, 2 * F.q**dm) if F.q == 2):
            for a in enumerate_below(F, deg_a_max + 1):
                if a.degree < dm + s:
                    continue
                elems = enumerate_class(a, m, s)
                if all(is_irreducible(f) for f in elems):
                    found.add((frozenset(elems), m))
    return found


def test_enumerate_class_examples(F2):
    a, m = P(F2, "1,1,0,1"), P(F2, "0,1,1")
    assert set(enumerate_class(a, m, 1)) == {P(F2, "1,1,0,1"), P(F2, "1,0,1,1")}
    assert enumerate_class(a, m, 0) == [a]
    assert set(enumerate_class(Poly.zero(F2), Poly.one(F2), 2)) == set(enumerate_below(F2, 2))
    with pytest.raises(ZeroModulus):
        enumerate_class(a, Poly.zero(F2), 1)


def test_class_invariants():
    F = field_of_order(3)
    a, m = P(F, "1,2,0,0,1"), P(F, "2,1")
    elems = enumerate_class(a, m, 2)
    assert len(elems) == 9 and len(set(elems)) == 9
    for f in elems:
        assert ((f - a) % m).is_zero()
        assert (f - a).degree < 2 + m.degree


def test_is_prime_class_examples(F2):
    cls = TruncatedClass(P(F2, "1,1,0,1"), P(F2, "0,1,1"), 1)
    ok, cert = is_prime_class(cls)
    assert ok and cert.witnesses == ("irreducible", "irreducible")
    ok, cert = is_prime_class(TruncatedClass(Poly.one(F2), P(F2, "0,1"), 1))
    assert not ok and cert.witnesses[0] == "unit"
    ok, cert = is_prime_class(TruncatedClass(Poly.zero(F2), P(F2, "0,1"), 1))
    assert not ok and cert.witnesses[0] == "zero"
    ok, cert = is_prime_class(TruncatedClass(P(F2, "0,0,1"), P(F2, "1"), 1))
    assert not ok and cert.witnesses[0] == factor(P(F2, "0,0,1")).text()


def test_certificate_json(F2):
    _, cert = is_prime_class(TruncatedClass(P(F2, "1,1,0,1"), P(F2, "0,1,1"), 1))
    d = cert.to_dict()
    assert d == {"q": 2, "a": "1,1,0,1", "m": "0,1,1", "s": 1, "size": 2, "twist": None,
                 "elements": ["1,1,0,1", "1,0,1,1"], "witnesses": ["irreducible", "irreducible"]}


def test_search_finds_the_hand_example(F2):
    t0 = time.perf_counter()
    rep = collect(search(F2, 2, 3, 1))
    assert time.perf_counter() - t0 < 5
    pairs = {(c.cls.a.text(), c.cls.m.text()) for c in rep.certificates}
    assert ("1,1,0,1", "0,1,1") in pairs
    assert rep.exhausted


def test_search_guard_empties_small_range(F2):
    assert collect(search(F2, 1, 1, 1)).element_count == 0


def test_search_q3_small_degrees():
    F = field_of_order(3)
    # with deg m >= 1 the guard forces deg a >= 2, and a degree-2 class needs all
    # three quadratics of one residue line irreducible: the three irreducible
    # quadratics t^2+1, t^2+t+2, t^2+2t+2 have no common difference, so none exists
    assert collect(search(F, 1, 2, 1)).element_count == 0
    # allowing m = 1 admits the linear classes {t, t+1, t+2} and its scalar multiple
    rep = collect(search(F, 1, 2, 1, deg_m_min=0))
    assert rep.element_count == 2 and rep.divisor_count == 1


@pytest.mark.parametrize("s,deg_m_max,deg_a_max", [(1, 2, 6), (2, 2, 7), (1, 3, 7)])
def test_search_matches_brute_force(s, deg_m_max, deg_a_max):
    F = field_of_order(2)
    got = {(c.cls.element_set(), c.cls.m) for c in search(F, deg_m_max, deg_a_max, s)}
    assert got == brute_prime_classes(F, deg_m_max, deg_a_max, s)


def test_certificates_revalidate_and_invariants():
    F = field_of_order(2)
    certs = list(search(F, 6, 8, 2))
    assert certs
    for c in certs:
        ok, _ = is_prime_class(c.cls, c.twist)
        assert ok
        # translation covariance: shifting a inside the class gives the same set
        for h in enumerate_below(F, 2):
            moved = TruncatedClass(c.cls.a + c.cls.m * h, c.cls.m, 2)
            assert moved.element_set() == c.cls.element_set()
        # every s=1 subclass of a prime s=2 class is itself prime
        for h in enumerate_below(F, 2):
            sub = TruncatedClass(c.cls.a + c.cls.m * h, c.cls.m, 1)
            assert sub.element_set() <= c.cls.element_set()
            assert is_prime_class(sub)[0]
    # density: elements hit at degree n never exceed the irreducible count
    by_deg = {}
    for c in certs:
        for f in c.cls.elements():
            by_deg.setdefault(f.degree, set()).add(f.monic())
    for n, hit in by_deg.items():
        assert len(hit) <= count_irreducible(2, n)


def test_search_order_is_deterministic(F2):
    a = [c.to_dict() for c in search(F2, 6, 8, 2)]
    b = [c.to_dict() for c in search(F2, 6, 8, 2)]
    assert a == b
    keys = [(c["m"], c["a"]) for c in a]
    assert len(keys) == len(set(keys))


def test_budget_emits_partial_then_raises(F2):
    got = []
    with pytest.raises(BudgetExceeded):
        for c in search(F2, 2, 6, 1, budget=40):
            got.append(c)
    full = list(search(F2, 2, 6, 1))
    assert got == full[:len(got)]
    rep = collect(search(F2, 2, 6, 1, budget=40), 40)
    assert not rep.exhausted and rep.element_count == len(got)


def test_search_rejects_bad_input(F2):
    with pytest.raises(InvalidInput):
        list(search(F2, 1, 3, 0))
    with pytest.raises(AlphaNotCoprime):
        list(search(F2, 1, 3, 1, twist=(P(F2, "0,1,1"), P(F2, "0,1"))))


def test_twisted_search(F2):
    W, alpha = P(F2, "0,1,1"), Poly.one(F2)
    certs = list(search(F2, 2, 5, 1, twist=(W, alpha)))
    assert certs
    for c in certs:
        assert all(is_irreducible(W * f + alpha) for f in c.cls.elements())
        assert c.to_dict()["twist"] == {"W": "0,1,1", "alpha": "1"}


def test_search_in_class_trivial_reduces_to_search(F2):
    one = Poly.one(F2)
    inside = {(c.cls.element_set(), c.cls.m) for c in search_in_class(F2, one, Poly.zero(F2), one, Poly.zero(F2), 7, 1)}
    plain = {(c.cls.element_set(), c.cls.m) for c in search(F2, 5, 6, 1)}
    assert inside == plain


def test_search_in_class_constraint(F2):
    M, res = P(F2, "1,1"), P(F2, "1")
    W, alpha = P(F2, "0,1,1"), Poly.one(F2)
    certs = list(search_in_class(F2, M, res, W, alpha, 8, 1))
    assert certs
    for c in certs:
        for f in c.cls.elements():
            assert (f % M) == res
            assert f.degree < 8
            assert is_irreducible(W * f + alpha)
    with pytest.raises(AlphaNotCoprime):
        list(search_in_class(F2, M, res, W, P(F2, "0,1"), 8, 1))
    with pytest.raises(ZeroModulus):
        list(search_in_class(F2, Poly.zero(F2), res, W, alpha, 8, 1))


def test_divisor_level_count(F2):
    rep = collect(search(F2, 2, 5, 1))
    assert rep.divisor_count <= rep.element_count
    d = rep.to_dict()
    assert d["classes_element_level"] == rep.element_count
    assert d["exhausted"] is True
