"""Truncated Euler product for the Fourier-side correlation sum F(t, t').

At a prime P of norm N the local factor is

    E_P = sum over subsets S of the forms of omega_P(S) * prod_{j in S} g_j,
    g_j = -N^(-a_j) - N^(-a'_j) + N^(-a_j - a'_j),  a_j = (1 + i t_j) / R,

which is the expansion over pairs of squarefree divisors supported on P,
grouped by which forms P must divide.  omega_P(S) is N^(-rank) or 0.
Below a degree bound every prime is treated individually; above it no
prime can divide a minor of the system, so all primes of one degree share
the generic factor and are handled through the irreducible count.
"""

from __future__ import annotations

import cmath
import math
from ..ffpoly import Poly, enumerate_monic, is_irreducible
from ..ffpoly.counting import count_irreducible
from ..ffpoly.tables import irreducible_polys
from ..sieve.weights import SieveParams
from .density import prime_rank_table
from .system import LinearSystem


def _log1p(x: complex) -> complex:
    if abs(x) < 1e-6:
        return x - x * x / 2 + x * x * x / 3
    return cmath.log(1 + x)


def exceptional_degree(sys: LinearSystem, params: SieveParams) -> int:
    """Primes above this degree cannot divide a nonzero minor of [W psi | b']."""
    dw = params.W.degree
    entry = max([dw + sys.k - 1] + [max(dw + b.degree, params.alpha.degree) for b in sys.shifts] + [0])
    return max(params.w, (sys.m + 1) * entry)


def _factor_excess(N: float, ranks, g) -> complex:
    """E_P - 1 from (rank, solvable) per subset and the g_j values."""
    x = 0j
    for mask, (rank, ok) in ranks.items():
        if not any(mask) or not ok:
            continue
        term = N ** (-rank)
        for j, bit in enumerate(mask):
            if bit:
                term *= g[j]
        x += term
    return x


def _g_values(N_log: float, tvec, tvec2, R: float) -> list[complex]:
    out = []
    for t, t2 in zip(tvec, tvec2):
        a, b = (1 + 1j * t) / R, (1 + 1j * t2) / R
        out.append(-cmath.exp(-a * N_log) - cmath.exp(-b * N_log) + cmath.exp(-(a + b) * N_log))
    return out


def _generic_prime(field, degree: int) -> Poly:
    """Lowest-index monic irreducible of the given degree."""
    for f in enumerate_monic(field, degree):
        if is_irreducible(f):
            return f
    raise AssertionError("irreducibles exist in every degree")


def euler_log_terms(tvec, tvec2, sys: LinearSystem, params: SieveParams, B: int):
    """Per-degree contributions to log F, degrees 1..B."""
    F = sys.field
    q = F.q
    bound = exceptional_degree(sys, params)
    out = []
    generic = None
    for d in range(1, B + 1):
        N_log = d * math.log(q)
        N = float(q) ** d
        g = _g_values(N_log, tvec, tvec2, params.R)
        if d <= bound:
            total = 0j
            for P in irreducible_polys(F, d):
                ranks = prime_rank_table(sys, P, params.W, params.alpha)
                total += _log1p(_factor_excess(N, ranks, g))
        else:
            if generic is None:
                P = _generic_prime(F, bound + 1)
                generic = prime_rank_table(sys, P, params.W, params.alpha)
            total = count_irreducible(q, d) * _log1p(_factor_excess(N, generic, g))
        out.append(total)
    return out


def euler_F(tvec, tvec2, sys: LinearSystem, params: SieveParams, B: int) -> complex:
    """Product of the local factors over primes of degree <= B."""
    return cmath.exp(sum(euler_log_terms(tvec, tvec2, sys, params, B)))


def euler_F_limit(tvec, tvec2, params: SieveParams) -> complex:
    """(q^deg W / (phi_K(W) R res))^s * prod (1+it)(1+it') / (2+it+it')."""
    s = len(tvec)
    scale = params.q**params.W.degree / (params.phi_K_W * params.R * params.residue)
    out = complex(scale**s)
    for t, t2 in zip(tvec, tvec2):
        out *= (1 + 1j * t) * (1 + 1j * t2) / (2 + 1j * t + 1j * t2)
    return out


def absolute_sum_bound(sys: LinearSystem, params: SieveParams, B: int) -> float:
    """Truncation of the sum of omega * prod |mu mu'| / N^(1/R) over degrees <= B.

    Same local structure as F with every g_j replaced by
    N^(-1/R) + N^(-1/R) + N^(-2/R).
    """
    F = sys.field
    q = F.q
    bound = exceptional_degree(sys, params)
    total = 0.0
    generic = None
    for d in range(1, B + 1):
        N = float(q) ** d
        h = 2 * N ** (-1 / params.R) + N ** (-2 / params.R)
        g = [h] * sys.s
        if d <= bound:
            for P in irreducible_polys(F, d):
                total += math.log1p(_factor_excess(N, prime_rank_table(sys, P, params.W, params.alpha), g).real)
        else:
            if generic is None:
                generic = prime_rank_table(sys, _generic_prime(F, bound + 1), params.W, params.alpha)
            total += count_irreducible(q, d) * math.log1p(_factor_excess(N, generic, g).real)
    return math.exp(total)
