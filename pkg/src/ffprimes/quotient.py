"""Quotient rings F_q[t]/(N), lifted measures and hypergraph measures.

Residues are canonical representatives of degree < deg N, addressed by
index.  The vertex set J is every polynomial of degree < k; edge e_j is
J without j, and the hypergraph measure on e_j evaluates the lifted
measure at sum_{i in e_j} (i - j) x_i mod N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .errors import BudgetExceeded, InvalidInput, NotAdmissible
from .ffpoly import FieldSpec, Poly, factor
from .ffpoly.vector import AffineMap
from .reduce import partitioned_sum
from .report import fmt_float

DEFAULT_BUDGET = 1 << 24


@dataclass(frozen=True)
class QuotientRing:
    N: Poly
    k: int

    @property
    def field(self) -> FieldSpec:
        return self.N.field

    @property
    def degree(self) -> int:
        return self.N.degree

    @property
    def size(self) -> int:
        return self.field.q**self.N.degree

    def reduce(self, f: Poly) -> Poly:
        return f % self.N

    def residue(self, idx: int) -> Poly:
        return Poly.from_index(self.field, idx)

    def vertices(self) -> list[Poly]:
        """J: all polynomials of degree < k, index order."""
        return [Poly.from_index(self.field, i) for i in range(self.field.q**self.k)]


def ring_make(N: Poly, k: int) -> QuotientRing:
    if N.is_zero() or N.degree < 1 or not N.is_monic():
        raise InvalidInput("N must be monic and nonconstant")
    for P, _ in factor(N):
        if P.degree < k:
            raise NotAdmissible(f"factor {P} of N has degree < k = {k}")
    return QuotientRing(N, k)


def lift_measure(nu, ring: QuotientRing) -> np.ndarray:
    """Table over residues: entry i is nu_{deg N} at the representative i.

    ``nu`` is a measure with ``table(n)`` or a callable r -> measure giving
    nu_r; in the second case it is evaluated at r = deg N.
    """
    n = ring.degree
    measure = nu(n) if callable(nu) and not hasattr(nu, "table") else nu
    out = np.array(measure.table(n), dtype=np.float64, copy=True)
    out.setflags(write=False)
    return out


def edge(ring: QuotientRing, j: Poly) -> list[Poly]:
    return [i for i in ring.vertices() if i != j]


def _edge_coefficients(ring: QuotientRing, j: Poly) -> list[Poly]:
    return [ring.reduce(i - j) for i in edge(ring, j)]


def hypergraph_point(xs: Sequence[Poly], j: Poly, ring: QuotientRing) -> Poly:
    """sum_{i in e_j} (i - j) x_i mod N; xs aligned with edge(ring, j)."""
    coeffs = _edge_coefficients(ring, j)
    if len(xs) != len(coeffs):
        raise InvalidInput(f"edge has {len(coeffs)} vertices, got {len(xs)} values")
    acc = Poly.zero(ring.field)
    for c, x in zip(coeffs, xs):
        acc = acc + c * x
    return ring.reduce(acc)


def hypergraph_measure(xs: Sequence[Poly], j: Poly, ring: QuotientRing, lifted: np.ndarray) -> float:
    return float(lifted[hypergraph_point(xs, j, ring).index()])


def psi_omega(x1: Sequence[Poly], j: Poly, omega: Sequence[int], ring: QuotientRing) -> Poly:
    """Sum over edge vertices with omega_i = 1 of (i - j) x_i."""
    acc = Poly.zero(ring.field)
    for c, x, w in zip(_edge_coefficients(ring, j), x1, omega):
        if w:
            acc = acc + c * x
    return ring.reduce(acc)


def b_omega(x0: Sequence[Poly], j: Poly, omega: Sequence[int], ring: QuotientRing) -> Poly:
    """Sum over edge vertices with omega_i = 0 of (i - j) x_i."""
    return psi_omega(x0, j, [1 - w for w in omega], ring)


def select(x0: Sequence[Poly], x1: Sequence[Poly], omega: Sequence[int]) -> list[Poly]:
    return [b if w else a for a, b, w in zip(x0, x1, omega)]


def decomposition_holds(j: Poly, omega: Sequence[int], x0, x1, ring: QuotientRing,
                        lifted: np.ndarray) -> bool:
    """nu_{N,j}(x^(omega)) == nu_N(psi_omega(x1) + b_omega), bit for bit."""
    lhs = hypergraph_measure(select(x0, x1, omega), j, ring, lifted)
    point = ring.reduce(psi_omega(x1, j, omega, ring) + b_omega(x0, j, omega, ring))
    rhs = float(lifted[point.index()])
    return lhs == rhs


def condition_one_estimate(j: Poly, omegas: Sequence[Sequence[int]], ring: QuotientRing,
                           lifted: np.ndarray, x0: Sequence[Poly], budget: int = DEFAULT_BUDGET,
                           threads: int = 1) -> float:
    """Average over x^(1) in ring^{e_j} of prod_{omega} nu_{N,j}(x^(omega))."""
    F = ring.field
    size_e = len(edge(ring, j))
    n = ring.degree
    terms = F.q ** (n * size_e)
    if terms > budget:
        raise BudgetExceeded(f"{terms} terms exceed the budget {budget}")
    if not omegas:
        return 1.0
    maps = []
    for omega in omegas:
        b = b_omega(x0, j, omega, ring)
        maps.append(AffineMap.from_poly_function(
            F, [n] * size_e, n,
            lambda xs, omega=omega, b=b: ring.reduce(psi_omega(xs, j, omega, ring) + b)))

    def chunk(lo, hi):
        g = np.arange(lo, hi, dtype=np.int64)
        prod = np.ones(hi - lo)
        for amap in maps:
            prod *= lifted[amap.apply_combined(g)]
        return float(np.sum(prod))

    return partitioned_sum(chunk, terms, threads) / terms


def all_patterns(size: int, include_zero: bool = False) -> list[tuple[int, ...]]:
    pats = list(product((0, 1), repeat=size))
    return pats if include_zero else [p for p in pats if any(p)]


def condition_two_estimate(omega_sets: dict, ring: QuotientRing, lifted: np.ndarray,
                           budget: int = DEFAULT_BUDGET, threads: int = 1) -> float:
    """Average over x^(0), x^(1) in ring^J of prod_j prod_{omega in Omega_j} nu_{N,j}(x^(omega)).

    The sum runs over q^(2 |J| deg N) tuples and is divided by that count,
    the same normalization pattern as condition one.  ``omega_sets`` maps
    each vertex index to its pattern list.
    """
    F = ring.field
    J = ring.vertices()
    n = ring.degree
    nv = len(J)
    terms = F.q ** (2 * nv * n)
    if terms > budget:
        raise BudgetExceeded(f"{terms} terms exceed the budget {budget}")
    maps = []
    for jpos, j in enumerate(J):
        others = [i for i in range(nv) if i != jpos]
        coeffs = [ring.reduce(J[i] - j) for i in others]
        for omega in omega_sets.get(jpos, []):
            def fn(xs, omega=omega, others=others, coeffs=coeffs):
                # xs = x^(0) over J followed by x^(1) over J
                acc = Poly.zero(F)
                for c, i, w in zip(coeffs, others, omega):
                    acc = acc + c * xs[i + nv * w]
                return ring.reduce(acc)
            maps.append(AffineMap.from_poly_function(F, [n] * (2 * nv), n, fn))
    if not maps:
        return 1.0

    def chunk(lo, hi):
        g = np.arange(lo, hi, dtype=np.int64)
        prod = np.ones(hi - lo)
        for amap in maps:
            prod *= lifted[amap.apply_combined(g)]
        return float(np.sum(prod))

    return partitioned_sum(chunk, terms, threads) / terms


CONDITION_TWO_NORMALIZATION = "divide by q^(2 |J| deg N), the number of summed tuples"


def lifted_csv(ring: QuotientRing, lifted: np.ndarray) -> str:
    lines = ["residue,value"]
    for idx, v in enumerate(lifted):
        lines.append(f"\"{Poly.from_index(ring.field, idx).text()}\",{fmt_float(v)}")
    return "\n".join(lines) + "\n"


def make_lift_source(params_at: Callable[[int], object]):
    """Adapter: r -> SieveMeasure built from a parameter factory."""
    from .sieve.measure import SieveMeasure

    def source(r: int):
        return SieveMeasure(params_at(r))

    return source
