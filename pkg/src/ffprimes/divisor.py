"""Effective divisors on the affine line as factored monic polynomials.

A divisor is a finite map from monic irreducibles to positive
multiplicities.  Elements of the Riemann-Roch space of D = (g)_0 are kept
as numerators h of h/g, so the divisor (h/g) + D is divisor_of(h) and the
degree window ord_inf > -r becomes deg h < r + deg g.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterator

from .errors import InvalidInput, ZeroPolynomial
from .ffpoly import FieldSpec, Poly, factor, gcd, is_irreducible


def _canonical(items) -> tuple[tuple[Poly, int], ...]:
    return tuple(sorted(((P, int(e)) for P, e in items if e), key=lambda pe: pe[0].sort_key()))


@dataclass(frozen=True)
class Divisor:
    """Effective divisor sum(mult * P); ``primes`` is canonically sorted."""

    field: FieldSpec
    primes: tuple[tuple[Poly, int], ...] = ()

    @classmethod
    def from_map(cls, field: FieldSpec, mapping, validate: bool = True) -> "Divisor":
        items = dict(mapping).items()
        if validate:
            for P, e in items:
                if e < 0:
                    raise InvalidInput("effective divisors have nonnegative multiplicities")
                if not P.is_monic() or not is_irreducible(P):
                    raise InvalidInput(f"{P} is not a monic irreducible")
        return cls(field, _canonical(items))

    @classmethod
    def zero(cls, field: FieldSpec) -> "Divisor":
        return cls(field, ())

    def as_dict(self) -> dict[Poly, int]:
        return dict(self.primes)

    def mult(self, P: Poly) -> int:
        return self.as_dict().get(P, 0)

    @property
    def degree(self) -> int:
        return sum(e * P.degree for P, e in self.primes)

    @property
    def norm(self) -> int:
        return self.field.q**self.degree

    def is_zero(self) -> bool:
        return not self.primes

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.primes)

    def is_prime(self) -> bool:
        return len(self.primes) == 1 and self.primes[0][1] == 1

    def support(self) -> tuple[Poly, ...]:
        return tuple(P for P, _ in self.primes)

    def squarefree_part(self) -> "Divisor":
        return Divisor(self.field, tuple((P, 1) for P, _ in self.primes))

    def generator(self) -> Poly:
        """The monic polynomial whose divisor this is."""
        out = Poly.one(self.field)
        for P, e in self.primes:
            out = out * P**e
        return out

    def __add__(self, other: "Divisor") -> "Divisor":
        acc = self.as_dict()
        for P, e in other.primes:
            acc[P] = acc.get(P, 0) + e
        return Divisor(self.field, _canonical(acc.items()))

    def __le__(self, other: "Divisor") -> bool:
        return lattice(self, other, "leq")

    def text(self) -> str:
        return ";".join(f"{P.text()}^{e}" for P, e in self.primes)

    @classmethod
    def parse(cls, field: FieldSpec, text: str) -> "Divisor":
        text = text.strip()
        if not text:
            return cls.zero(field)
        acc: dict[Poly, int] = {}
        for entry in text.split(";"):
            body, _, mult = entry.partition("^")
            P = Poly.parse(field, body)
            acc[P] = acc.get(P, 0) + (int(mult) if mult else 1)
        return cls.from_map(field, acc)

    def __str__(self):
        if not self.primes:
            return "0"
        return " + ".join(f"{e}*({P})" if e > 1 else f"({P})" for P, e in self.primes)


def divisor_of(f: Poly) -> Divisor:
    """Divisor of the monic normalization of f; constants give the zero divisor."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no divisor")
    return Divisor(f.field, tuple(factor(f).factors))


def mobius(d: Divisor) -> int:
    if not d.is_squarefree():
        return 0
    return -1 if len(d.primes) % 2 else 1


def lattice(a: Divisor, b: Divisor, op: str):
    """Pointwise comparison (leq), maximum (lcm) or minimum (meet)."""
    da, db = a.as_dict(), b.as_dict()
    if op == "leq":
        return all(e <= db.get(P, 0) for P, e in da.items())
    keys = set(da) | set(db)
    if op == "lcm":
        return Divisor(a.field, _canonical((P, max(da.get(P, 0), db.get(P, 0))) for P in keys))
    if op == "meet":
        return Divisor(a.field, _canonical((P, min(da.get(P, 0), db.get(P, 0))) for P in keys))
    raise InvalidInput(f"unknown lattice operation {op!r}")


def divisors_below(D: Divisor) -> Iterator[Divisor]:
    """All effective M <= D; the first prime's multiplicity varies slowest."""
    primes = [P for P, _ in D.primes]
    for mults in itertools.product(*(range(e + 1) for _, e in D.primes)):
        yield Divisor(D.field, tuple((P, m) for P, m in zip(primes, mults) if m))


@dataclass(frozen=True)
class CurveModel:
    """The affine line over a field with the twisting divisor D = (g)_0."""

    field: FieldSpec
    g: Poly | None = None
    extension_degree: int = dc_field(default=1)

    def __post_init__(self):
        if self.extension_degree != 1:
            raise InvalidInput("only the rational function field is supported")
        g = self.g if self.g is not None else Poly.one(self.field)
        if g.is_zero() or not g.is_monic():
            raise InvalidInput("the twist g must be monic")
        if g.degree > 0 and gcd(g, g.derivative()).degree > 0:
            raise InvalidInput("the twist g must be squarefree")
        object.__setattr__(self, "g", g)

    @property
    def q(self) -> int:
        return self.field.q

    def box_degree(self, r: int) -> int:
        """Numerators h with h/g in the window ord_inf > -r have deg h < this."""
        return r + self.g.degree
