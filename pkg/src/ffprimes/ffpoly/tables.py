"""Sieved tables over monic polynomials of a fixed degree.

Arrays are indexed by the low index of a monic polynomial (its d lower
coefficients read in base q).  Tables are memoized per (field, degree).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .field import FieldSpec
from .kernels import mark_many
from .poly import Poly


def low_index_digits(field: FieldSpec, d: int, low: np.ndarray) -> np.ndarray:
    """Code rows (constant first, leading 1 appended) for the given low indices."""
    q = field.q
    low = np.asarray(low, dtype=np.int64)
    out = np.empty((low.shape[0], d + 1), dtype=np.int64)
    rest = low.copy()
    for i in range(d):
        out[:, i] = rest % q
        rest //= q
    out[:, d] = 1
    return out


def _mark(field: FieldSpec, rows: np.ndarray, d: int, out: np.ndarray) -> None:
    if rows.shape[0] == 0:
        return
    arr = field.arrays
    mark_many(rows, d, field.p, field.q, field.e, arr["add"], arr["mul"], out, out.dtype.type(1))


@lru_cache(maxsize=64)
def irreducible_flags(field: FieldSpec, d: int) -> np.ndarray:
    """Boolean array over q**d monic polynomials of degree d: True = irreducible."""
    composite = np.zeros(field.q**d, dtype=np.uint8)
    for a in range(1, d // 2 + 1):
        _mark(field, irreducible_rows(field, a), d, composite)
    flags = composite == 0
    flags.setflags(write=False)
    return flags


def count_irreducible_sieve(field: FieldSpec, d: int) -> int:
    """Count degree-d irreducibles by sieving, without keeping the table."""
    if field.q**d <= 1 << 24:
        return int(irreducible_flags(field, d).sum())
    composite = np.zeros(field.q**d, dtype=np.uint8)
    for a in range(1, d // 2 + 1):
        _mark(field, irreducible_rows(field, a), d, composite)
    return int(np.count_nonzero(composite == 0))


@lru_cache(maxsize=64)
def irreducible_rows(field: FieldSpec, d: int) -> np.ndarray:
    """Code rows of all monic irreducibles of degree d, ascending index."""
    low = np.flatnonzero(irreducible_flags(field, d))
    rows = low_index_digits(field, d, low)
    rows.setflags(write=False)
    return rows


def irreducible_polys(field: FieldSpec, d: int) -> list[Poly]:
    return [Poly._raw(field, row.tolist()) for row in irreducible_rows(field, d)]


@lru_cache(maxsize=64)
def mobius_table(field: FieldSpec, d: int) -> np.ndarray:
    """int8 array of mu over monic polynomials of degree d."""
    size = field.q**d
    if d == 0:
        return np.ones(1, dtype=np.int8)
    omega = np.zeros(size, dtype=np.uint8)
    square = np.zeros(size, dtype=np.uint8)
    for a in range(1, d + 1):
        rows = irreducible_rows(field, a)
        _mark(field, rows, d, omega)
        if 2 * a <= d:
            sq = np.array([(P * P).coeffs for P in irreducible_polys(field, a)], dtype=np.int64)
            _mark(field, sq.reshape(-1, 2 * a + 1), d, square)
    mu = np.where(omega % 2 == 0, 1, -1).astype(np.int8)
    mu[square > 0] = 0
    mu.setflags(write=False)
    return mu
