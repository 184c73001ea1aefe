"""Irreducibility testing and factorization in F_q[t].

Factorization runs the classical pipeline: squarefree decomposition,
distinct-degree splitting with iterated Frobenius, and Cantor-Zassenhaus
equal-degree splitting driven by a fixed-seed generator.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..errors import ZeroPolynomial
from .poly import Poly, gcd, powmod

EDF_SEED = 0x5EED


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FrobeniusMap:
    """The F_q-linear map g -> g**q on F_q[t]/(f), stored as a matrix.

    Row i holds t**(i*q) mod f, so applying the map to g costs one
    matrix-vector product instead of a modular exponentiation.
    """

    def __init__(self, f: Poly):
        self.f = f
        self.field = f.field
        n = f.degree
        tq = powmod(Poly.t(f.field), f.field.q, f)
        rows, cur = [], Poly.one(f.field)
        for _ in range(n):
            rows.append(cur)
            cur = (cur * tq) % f
        self.rows = rows

    def __call__(self, g: Poly) -> Poly:
        F = self.field
        add, mul = F.add_table, F.mul_table
        n = self.f.degree
        acc = [0] * n
        for i, c in enumerate(g.coeffs):
            if c:
                row = mul[c]
                for j, x in enumerate(self.rows[i].coeffs):
                    acc[j] = add[acc[j]][row[x]]
        return Poly._raw(F, acc)


def is_irreducible(f: Poly) -> bool:
    """Rabin's test on the monic normalization of f."""
    if f.is_zero():
        raise ZeroPolynomial("irreducibility of the zero polynomial")
    f = f.monic()
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    t = Poly.t(f.field)
    frob = FrobeniusMap(f)
    # powers[k] = t**(q**k) mod f
    powers = [t]
    for _ in range(n):
        powers.append(frob(powers[-1]))
    if powers[n] != t:
        return False
    for r in _prime_divisors(n):
        if gcd(f, powers[n // r] - t).degree != 0:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """f = unit * prod(P**e for P, e in factors), factors canonically sorted."""

    unit: int
    factors: tuple[tuple[Poly, int], ...]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def expand(self, field) -> Poly:
        out = Poly.constant(field, self.unit)
        for P, e in self.factors:
            out = out * P**e
        return out

    def is_prime(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    def text(self) -> str:
        return ";".join(f"{P.text()}^{e}" for P, e in self.factors)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree g_i with f.monic() = prod g_i**i (trivial g_i omitted)."""
    f = f.monic()
    if f.degree < 1:
        return []
    p = f.field.p
    out: list[tuple[Poly, int]] = []
    df = f.derivative()
    if df.is_zero():
        return [(g, e * p) for g, e in squarefree_decomposition(f.pth_root())]
    c = gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        out.extend((g, e * p) for g, e in squarefree_decomposition(c.pth_root()))
    merged: dict[Poly, int] = {}
    for g, e in out:
        merged[g] = merged.get(g, 0) + e
    return sorted(merged.items(), key=lambda ge: (ge[1], ge[0].sort_key()))


def distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split a monic squarefree f into products of same-degree irreducibles."""
    out = []
    F = f.field
    t = Poly.t(F)
    h = t % f
    d = 0
    rest = f
    frob = FrobeniusMap(f)
    while rest.degree >= 2 * (d + 1):
        d += 1
        h = frob(h)
        g = gcd(rest, h - t)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
            frob = FrobeniusMap(rest)
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _random_poly(F, deg_bound: int, rng: random.Random) -> Poly:
    return Poly._raw(F, [rng.randrange(F.q) for _ in range(deg_bound)])


def _split_once(g: Poly, d: int, rng: random.Random) -> Poly:
    F = g.field
    while True:
        a = _random_poly(F, g.degree, rng)
        if a.degree < 1:
            continue
        if F.p == 2:
            # absolute trace to F_2 composed with the norm to F_{q^d}
            cur = a % g
            acc = cur
            for _ in range(F.e * d - 1):
                cur = (cur * cur) % g
                acc = acc + cur
            b = acc
        else:
            b = powmod(a, (F.q**d - 1) // 2, g) - 1
        h = gcd(g, b)
        if 0 < h.degree < g.degree:
            return h


def equal_degree(g: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Irreducible factors of g, a monic product of distinct degree-d irreducibles."""
    if g.degree == d:
        return [g]
    h = _split_once(g, d, rng)
    return equal_degree(h, d, rng) + equal_degree(g // h, d, rng)


def factor(f: Poly) -> Factorization:
    if f.is_zero():
        raise ZeroPolynomial("factorization of the zero polynomial")
    rng = random.Random(EDF_SEED)
    unit = f.lc
    acc: dict[Poly, int] = {}
    for g, e in squarefree_decomposition(f):
        for block, d in distinct_degree(g):
            for P in equal_degree(block, d, rng):
                acc[P] = acc.get(P, 0) + e
    items = sorted(acc.items(), key=lambda pe: pe[0].sort_key())
    return Factorization(unit, tuple(items))
