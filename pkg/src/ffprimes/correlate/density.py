"""Local densities of divisibility conditions on linear forms.

omega((d_j)) is the proportion of x in (F_q[t]/d)^m, d = lcm(d_j), with
d_j | W psi_j(x) + b'_j for every j, where b'_j = W b_j + alpha.  Two
routes are provided: exhaustive counting over the quotient, and, at a
single prime, rank and consistency of the linear system over the residue
field.  The Chinese remainder theorem ties them together.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import product

import numpy as np

from ..divisor import Divisor, divisor_of, lattice
from ..errors import BudgetExceeded, InvalidInput
from ..ffpoly import Poly, inverse_mod
from ..ffpoly.vector import AffineMap
from ..sieve.weights import SieveParams
from .system import LinearSystem

# largest residue count omega_local will enumerate (one byte of state each)
COUNT_LIMIT = 1 << 26


def twisted_shifts(sys: LinearSystem, W: Poly, alpha: Poly) -> tuple[Poly, ...]:
    return tuple(W * b + alpha for b in sys.shifts)


def _targets(sys: LinearSystem, targets) -> tuple[Divisor, ...]:
    if isinstance(targets, Divisor):
        return (targets,) * sys.s
    targets = tuple(targets)
    if len(targets) != sys.s:
        raise InvalidInput("one target divisor per form is required")
    return targets


def omega_local(sys: LinearSystem, targets, params: SieveParams | None = None,
                W: Poly | None = None, alpha: Poly | None = None) -> Fraction:
    """Exact density by counting residues modulo the lcm of the targets."""
    targets = _targets(sys, targets)
    F = sys.field
    if params is not None:
        W, alpha = params.W, params.alpha
    W = Poly.one(F) if W is None else W
    alpha = Poly.zero(F) if alpha is None else alpha
    d = reduce(lambda a, b: lattice(a, b, "lcm"), targets, Divisor.zero(F))
    if d.is_zero():
        return Fraction(1)
    D = d.generator()
    n = D.degree
    shifts = twisted_shifts(sys, W, alpha)
    total = F.q ** (n * sys.m)
    if total > COUNT_LIMIT:
        raise BudgetExceeded(f"counting {total} residues exceeds {COUNT_LIMIT}; use omega_prime per prime")
    ok = np.ones(total, dtype=bool)
    g = np.arange(total, dtype=np.int64)
    for j, dj in enumerate(targets):
        if dj.is_zero():
            continue
        Dj = dj.generator()
        amap = AffineMap.from_poly_function(
            F, [n] * sys.m, Dj.degree,
            lambda xs, j=j, Dj=Dj: (W * sum((c * x for c, x in zip(sys.forms[j], xs)), Poly.zero(F)) + shifts[j]) % Dj)
        ok &= amap.apply_combined(g) == 0
    return Fraction(int(ok.sum()), total)


def _solve_counts(rows: list[list[Poly]], rhs: list[Poly], P: Poly) -> tuple[int, bool]:
    """Rank of rows modulo P and whether rows * x = rhs is solvable."""
    rows = [[c % P for c in row] + [b % P] for row, b in zip(rows, rhs)]
    m = len(rows[0]) - 1 if rows else 0
    rank = 0
    for col in range(m):
        pivot = next((i for i in range(rank, len(rows)) if not rows[i][col].is_zero()), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = inverse_mod(rows[rank][col], P)
        rows[rank] = [(c * inv) % P for c in rows[rank]]
        for i in range(len(rows)):
            if i != rank and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [(a - f * b) % P for a, b in zip(rows[i], rows[rank])]
        rank += 1
    # rows below the rank have zero coefficients; a nonzero right side is a contradiction
    consistent = all(row[-1].is_zero() for row in rows[rank:])
    return rank, consistent


def prime_rank_table(sys: LinearSystem, P: Poly, W: Poly, alpha: Poly) -> dict[tuple[int, ...], tuple[int, bool]]:
    """(rank, solvable) modulo the prime P for every subset of forms."""
    shifts = twisted_shifts(sys, W, alpha)
    out = {}
    for mask in product((0, 1), repeat=sys.s):
        idx = [j for j in range(sys.s) if mask[j]]
        rows = [[W * c for c in sys.forms[j]] for j in idx]
        rhs = [-shifts[j] for j in idx]
        out[mask] = _solve_counts(rows, rhs, P) if idx else (0, True)
    return out


def omega_prime(sys: LinearSystem, mask, P: Poly, W: Poly, alpha: Poly) -> Fraction:
    """Density at the prime P for the forms selected by mask, by elimination."""
    rank, ok = prime_rank_table(sys, P, W, alpha)[tuple(mask)]
    if not ok:
        return Fraction(0)
    return Fraction(1, (sys.field.q**P.degree) ** rank)


def omega_crt_check(sys: LinearSystem, d, params: SieveParams | None = None,
                    W: Poly | None = None, alpha: Poly | None = None) -> bool:
    """Direct density at a squarefree modulus equals the product of prime densities."""
    targets = _targets(sys, d)
    for t in targets:
        if not t.is_squarefree():
            raise InvalidInput("targets must be squarefree")
    F = sys.field
    lcm = reduce(lambda a, b: lattice(a, b, "lcm"), targets, Divisor.zero(F))
    direct = omega_local(sys, targets, params, W, alpha)
    prod = Fraction(1)
    for P, _ in lcm.primes:
        Pd = divisor_of(P)
        local = tuple(lattice(t, Pd, "meet") for t in targets)
        prod *= omega_local(sys, local, params, W, alpha)
    return direct == prod
