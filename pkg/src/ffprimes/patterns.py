"""Truncated residue classes made entirely of primes.

A truncated class is {a + m h : deg h < s}.  With the degree guard
deg a >= deg m + s every element has the degree and leading coefficient
of a, so a class is prime exactly when q^s same-degree polynomials are
irreducible.  Irreducibility of candidates is read from the sieved tables;
every emitted certificate is re-derived by factoring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import AlphaNotCoprime, BudgetExceeded, InvalidInput, ZeroModulus
from .ffpoly import FieldSpec, Poly, enumerate_below, enumerate_monic, factor, gcd
from .ffpoly.tables import irreducible_flags

TABLE_MAX_DEGREE = 20


@dataclass(frozen=True)
class TruncatedClass:
    a: Poly
    m: Poly
    s: int

    def __post_init__(self):
        if self.m.is_zero():
            raise ZeroModulus("the modulus of a class must be nonzero")
        if self.s < 0:
            raise InvalidInput("s must be >= 0")

    @property
    def field(self) -> FieldSpec:
        return self.a.field

    def elements(self) -> list[Poly]:
        return [self.a + self.m * h for h in enumerate_below(self.field, self.s)]

    def element_set(self) -> frozenset[Poly]:
        return frozenset(self.elements())

    def canonical_base(self) -> Poly:
        """Lowest-index element, a representative independent of the chosen a."""
        return min(self.elements(), key=lambda f: f.index())


def enumerate_class(a: Poly, m: Poly, s: int) -> list[Poly]:
    return TruncatedClass(a, m, s).elements()


@dataclass(frozen=True)
class PrimeClassCertificate:
    cls: TruncatedClass
    witnesses: tuple[str, ...]
    twist: tuple[Poly, Poly] | None
    valid: bool

    def to_dict(self) -> dict:
        F = self.cls.field
        return {
            "q": F.q,
            "a": self.cls.a.text(),
            "m": self.cls.m.text(),
            "s": self.cls.s,
            "size": F.q**self.cls.s,
            "twist": None if self.twist is None else {"W": self.twist[0].text(), "alpha": self.twist[1].text()},
            "elements": [f.text() for f in self.cls.elements()],
            "witnesses": list(self.witnesses),
        }

    def divisor_key(self) -> frozenset[Poly]:
        """Monic generators of the divisors of the tested values."""
        return frozenset(_tested(f, self.twist).monic() for f in self.cls.elements())


def _tested(f: Poly, twist) -> Poly:
    return f if twist is None else twist[0] * f + twist[1]


def is_prime_class(cls: TruncatedClass, twist: tuple[Poly, Poly] | None = None) -> tuple[bool, PrimeClassCertificate]:
    """Factor every tested value; the class is prime if all are irreducible."""
    witnesses, ok = [], True
    for f in cls.elements():
        g = _tested(f, twist)
        if g.is_zero():
            witnesses.append("zero")
            ok = False
            continue
        fac = factor(g)
        if fac.is_prime():
            witnesses.append("irreducible")
        else:
            witnesses.append(fac.text() if fac.factors else "unit")
            ok = False
    return ok, PrimeClassCertificate(cls, tuple(witnesses), twist, ok)


class _PrimeOracle:
    """Irreducibility through the sieved tables, Rabin above their range."""

    def __init__(self, field: FieldSpec):
        self.field = field
        self.q = field.q

    def __call__(self, f: Poly) -> bool:
        d = f.degree
        if d < 1:
            return False
        if d <= TABLE_MAX_DEGREE and self.q**d <= 1 << 24:
            g = f.monic()
            low = g.index() - self.q**d
            return bool(irreducible_flags(self.field, d)[low])
        from .ffpoly import is_irreducible
        return is_irreducible(f)


def _polys_of_degree(field: FieldSpec, d: int) -> Iterator[Poly]:
    """All polynomials of exact degree d, index order."""
    q = field.q
    for idx in range(q**d if d > 0 else 1, q ** (d + 1)):
        yield Poly.from_index(field, idx)


def _scan(field, m_iter, a_iter_for, s, twist, budget):
    oracle = _PrimeOracle(field)
    examined = 0
    for m in m_iter:
        for a in a_iter_for(m):
            examined += 1
            if budget is not None and examined > budget:
                raise BudgetExceeded(f"budget of {budget} candidate pairs reached", partial=examined - 1)
            if not oracle(_tested(a, twist)):
                continue
            cls = TruncatedClass(a, m, s)
            elems = cls.elements()
            if not all(oracle(_tested(f, twist)) for f in elems):
                continue
            if min(f.index() for f in elems) != a.index():
                continue  # the same set is reported from its lowest element
            ok, cert = is_prime_class(cls, twist)
            if not ok:
                raise AssertionError(f"table and factorization disagree on {cls}")
            yield cert


def search(field: FieldSpec, deg_m_max: int, deg_a_max: int, s: int,
           twist: tuple[Poly, Poly] | None = None, budget: int | None = None,
           deg_m_min: int = 1, guard: bool = True) -> Iterator[PrimeClassCertificate]:
    """Prime truncated classes with monic m and deg a <= deg_a_max.

    Order: m by (degree, index), then a by (degree, index).  With the
    guard, deg a >= deg m + s.  BudgetExceeded is raised after the classes
    found within the budget have been yielded.
    """
    if s < 1:
        raise InvalidInput("s must be >= 1")
    if twist is not None and gcd(twist[1], twist[0]).degree != 0:
        raise AlphaNotCoprime("alpha must be coprime to W")

    def m_iter():
        for dm in range(deg_m_min, deg_m_max + 1):
            yield from enumerate_monic(field, dm)

    def a_iter(m):
        lo = m.degree + s if guard else 0
        for da in range(lo, deg_a_max + 1):
            yield from _polys_of_degree(field, da)

    yield from _scan(field, m_iter(), a_iter, s, twist, budget)


def search_in_class(field: FieldSpec, M: Poly, residue: Poly, W: Poly, alpha: Poly, r: int, s: int,
                    budget: int | None = None, deg_m_max: int | None = None,
                    guard: bool = True) -> Iterator[PrimeClassCertificate]:
    """Prime classes inside f = residue (mod M), deg f < r, tested as W f + alpha.

    Moduli m run over monic multiples of M, so every element stays in the
    residue class of its base point.
    """
    if s < 1:
        raise InvalidInput("s must be >= 1")
    if M.is_zero():
        raise ZeroModulus("M must be nonzero")
    if gcd(alpha, W).degree != 0:
        raise AlphaNotCoprime("alpha must be coprime to W")
    M = M.monic()
    base = residue % M
    deg_m_max = r - 1 - s if deg_m_max is None else deg_m_max

    def m_iter():
        for dm in range(max(M.degree, 1 if guard else 0), deg_m_max + 1):
            for cof in enumerate_monic(field, dm - M.degree):
                yield M * cof

    def a_iter(m):
        lo = m.degree + s if guard else 0
        span = max(r - M.degree, 0)
        for u in enumerate_below(field, span):
            a = base + M * u
            if lo <= a.degree < r:
                yield a

    yield from _scan(field, m_iter(), a_iter, s, (W, alpha), budget)


@dataclass
class SearchReport:
    certificates: list[PrimeClassCertificate]
    exhausted: bool
    budget: int | None

    @property
    def element_count(self) -> int:
        return len(self.certificates)

    @property
    def divisor_count(self) -> int:
        return len({c.divisor_key() for c in self.certificates})

    def to_dict(self) -> dict:
        return {
            "exhausted": self.exhausted,
            "budget": self.budget,
            "classes_element_level": self.element_count,
            "classes_divisor_level": self.divisor_count,
            "certificates": [c.to_dict() for c in self.certificates],
        }


def collect(stream: Iterator[PrimeClassCertificate], budget: int | None = None) -> SearchReport:
    """Drain a search stream; a budget stop is recorded instead of raised."""
    found = []
    try:
        for cert in stream:
            found.append(cert)
    except BudgetExceeded:
        return SearchReport(found, False, budget)
    return SearchReport(found, True, budget)
