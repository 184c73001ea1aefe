"""Closed-form counts of irreducible polynomials."""

from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=None)
def int_mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius of a non-positive integer")
    out, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    return -out if n > 1 else out


def count_irreducible(q: int, d: int) -> int:
    """Monic irreducibles of degree d over F_q, by the necklace formula."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    total = sum(int_mobius(k) * q ** (d // k) for k in range(1, d + 1) if d % k == 0)
    return total // d
