"""F_q-affine maps acting on arrays of polynomial indices.

A polynomial of degree < n is an index in [0, q**n).  Writing each
coefficient in its F_p digits turns F_q-linear maps into F_p matrices, so
a whole batch of evaluations becomes one integer matrix product (or a
handful of XORs when p = 2).
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from ..errors import InvalidInput
from .field import FieldSpec
from .poly import Poly


def fp_digits(idx: np.ndarray, p: int, count: int) -> np.ndarray:
    """(N, count) array of base-p digits, least significant first."""
    idx = np.asarray(idx, dtype=np.int64)
    out = np.empty((idx.shape[0], count), dtype=np.int64)
    rest = idx.copy()
    for k in range(count):
        out[:, k] = rest % p
        rest //= p
    return out


def split_index(g: np.ndarray, q: int, lens: Sequence[int]) -> list[np.ndarray]:
    """Split a combined index into per-variable indices (first variable lowest)."""
    out, rest = [], np.asarray(g, dtype=np.int64)
    for n in lens:
        size = q**n
        out.append(rest % size)
        rest = rest // size
    return out


def _poly_fp_digits(field: FieldSpec, f: Poly, length: int) -> np.ndarray:
    if f.degree >= length:
        raise InvalidInput(f"{f} does not fit below degree {length}")
    ds = []
    for i in range(length):
        c = f.coeffs[i] if i < len(f.coeffs) else 0
        ds.extend(field.digits(c))
    return np.array(ds, dtype=np.int64)


class AffineMap:
    """y = offset + sum_i L_i(x_i) on polynomials given by index arrays.

    ``in_lens[i]`` bounds the inputs (deg x_i < in_lens[i]); outputs have
    degree < ``out_len``.
    """

    def __init__(self, field: FieldSpec, in_lens: Sequence[int], out_len: int,
                 matrices: Sequence[np.ndarray], offset: np.ndarray):
        self.field = field
        self.in_lens = tuple(in_lens)
        self.out_len = out_len
        self.matrices = [np.asarray(m, dtype=np.int64) for m in matrices]
        self.offset = np.asarray(offset, dtype=np.int64)
        p, e = field.p, field.e
        self._powers = p ** np.arange(e * out_len, dtype=np.int64)
        self.offset_index = int(self.offset @ self._powers)
        # index of the image of each F_p basis vector, used by the XOR path
        self._images = [m @ self._powers for m in self.matrices]

    @classmethod
    def from_poly_function(cls, field: FieldSpec, in_lens: Sequence[int], out_len: int,
                           fn: Callable[[list[Poly]], Poly]) -> "AffineMap":
        """Tabulate an F_q-affine polynomial function on the digit basis."""
        p, e = field.p, field.e
        zeros = [Poly.zero(field) for _ in in_lens]
        base = fn(zeros)
        offset = _poly_fp_digits(field, base, out_len)
        mats = []
        for i, n in enumerate(in_lens):
            rows = []
            for c in range(n):
                for s in range(e):
                    arg = list(zeros)
                    arg[i] = Poly.monomial(field, c, p**s)
                    img = fn(arg) - base
                    rows.append(_poly_fp_digits(field, img, out_len))
            mats.append(np.array(rows, dtype=np.int64).reshape(n * e, e * out_len))
        return cls(field, in_lens, out_len, mats, offset)

    def __call__(self, *xs: np.ndarray) -> np.ndarray:
        if len(xs) != len(self.in_lens):
            raise InvalidInput("wrong number of inputs")
        p, e = self.field.p, self.field.e
        xs = [np.asarray(x, dtype=np.int64) for x in xs]
        size = max((x.shape[0] for x in xs), default=1)
        if p == 2:
            out = np.full(size, self.offset_index, dtype=np.int64)
            for x, imgs in zip(xs, self._images):
                for k, img in enumerate(imgs):
                    if img:
                        out ^= ((x >> k) & 1) * img
            return out
        acc = np.broadcast_to(self.offset, (size, self.offset.shape[0])).copy()
        for x, n, mat in zip(xs, self.in_lens, self.matrices):
            acc += fp_digits(x, p, n * e) @ mat
        acc %= p
        return acc @ self._powers

    def apply_combined(self, g: np.ndarray) -> np.ndarray:
        """Evaluate on a combined index enumerating all input tuples."""
        parts = split_index(g, self.field.q, self.in_lens)
        return self(*parts)
