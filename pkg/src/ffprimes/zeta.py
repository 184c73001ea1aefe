"""Zeta function of F_q[t] (product over the finite primes)."""

from __future__ import annotations

import cmath
import math

from .errors import InvalidInput, PoleAt
from .ffpoly.counting import count_irreducible


def zeta_closed(z: complex, q: int) -> complex:
    """1 / (1 - q**(1 - z))."""
    z = complex(z)
    w = cmath.exp((1 - z) * math.log(q))
    denom = 1 - w
    # q**(1-z) = 1 exactly when (z - 1) * ln q is in 2*pi*i*Z
    k = (z - 1) * math.log(q) / (2j * math.pi)
    if abs(k - round(k.real)) < 1e-12:
        raise PoleAt(z)
    return 1 / denom


def zeta_residue(q: int) -> float:
    """Residue at z = 1, which is 1 / ln q."""
    return 1.0 / math.log(q)


def euler_truncated(z: complex, B: int, q: int) -> complex:
    """Euler product over primes of degree <= B.

    Uses the irreducible count per degree, accumulating log factors and
    exponentiating once.
    """
    if B < 0:
        raise InvalidInput("B must be >= 0")
    z = complex(z)
    log_total = 0j
    for d in range(1, B + 1):
        x = cmath.exp(-z * d * math.log(q))
        log_total -= count_irreducible(q, d) * cmath.log(1 - x)
    return cmath.exp(log_total)
