"""Finite fields F_q with q = p^e and q <= 32.

Elements are stored as integers 0..q-1.  For e > 1 the integer is read as
the base-p digit vector (constant digit first) of a polynomial in the
generator theta modulo the defining polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..errors import InvalidInput, NotPrime

MAX_ORDER = 32


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split q into (p, e) with q = p**e, raising NotPrime otherwise."""
    for p in range(2, q + 1):
        if q % p == 0:
            e, rest = 0, q
            while rest % p == 0:
                rest //= p
                e += 1
            if rest != 1 or not is_prime(p):
                raise NotPrime(f"{q} is not a prime power")
            return p, e
    raise NotPrime(f"{q} is not a prime power")


def _fp_mod(num: list[int], den: list[int], p: int) -> list[int]:
    # den is monic; both lists are constant-first
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    out = [c % p for c in num[:dd]]
    while out and out[-1] == 0:
        out.pop()
    return out


def _fp_monic_irreducible(coeffs: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(coeffs) - 1
    for d in range(1, deg // 2 + 1):
        for low in range(p**d):
            den = [(low // p**i) % p for i in range(d)] + [1]
            if not _fp_mod(coeffs, den, p):
                return False
    return True


def _lowest_irreducible(p: int, e: int) -> tuple[int, ...]:
    for low in range(p**e):
        coeffs = [(low // p**i) % p for i in range(e)] + [1]
        if _fp_monic_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("irreducible polynomials exist in every degree")


@dataclass(frozen=True)
class FieldSpec:
    """The field F_{p^e}; ``modulus`` is None for prime fields."""

    p: int
    e: int = 1
    modulus: tuple[int, ...] | None = None

    @property
    def q(self) -> int:
        return self.p**self.e

    def __repr__(self):
        if self.e == 1:
            return f"FieldSpec(F_{self.p})"
        return f"FieldSpec(F_{self.q}, modulus={list(self.modulus)})"

    # element encoding -------------------------------------------------

    def digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.e)]

    def from_digits(self, ds) -> int:
        ds = list(ds)
        if len(ds) > self.e:
            raise InvalidInput(f"element vector {ds} longer than e={self.e}")
        return sum((d % self.p) * self.p**i for i, d in enumerate(ds))

    def _mul_raw(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        red = _fp_mod(prod, list(self.modulus), p)
        return self.from_digits(red)

    # tables -----------------------------------------------------------

    @cached_property
    def add_table(self) -> list[list[int]]:
        q, p = self.q, self.p
        if self.e == 1:
            return [[(a + b) % p for b in range(q)] for a in range(q)]
        return [[self.from_digits(x + y for x, y in zip(self.digits(a), self.digits(b)))
                 for b in range(q)] for a in range(q)]

    @cached_property
    def neg_table(self) -> list[int]:
        if self.e == 1:
            return [(-a) % self.p for a in range(self.q)]
        return [self.from_digits(-x for x in self.digits(a)) for a in range(self.q)]

    @cached_property
    def sub_table(self) -> list[list[int]]:
        add, neg = self.add_table, self.neg_table
        return [[add[a][neg[b]] for b in range(self.q)] for a in range(self.q)]

    @cached_property
    def mul_table(self) -> list[list[int]]:
        q = self.q
        if self.e == 1:
            return [[(a * b) % q for b in range(q)] for a in range(q)]
        return [[self._mul_raw(a, b) for b in range(q)] for a in range(q)]

    @cached_property
    def inv_table(self) -> list[int]:
        inv = [0] * self.q
        for a in range(1, self.q):
            for b in range(1, self.q):
                if self.mul_table[a][b] == 1:
                    inv[a] = b
                    break
        return inv

    @cached_property
    def frobenius_table(self) -> list[int]:
        """a -> a**p."""
        out = []
        mul = self.mul_table
        for a in range(self.q):
            x = 1
            for _ in range(self.p):
                x = mul[x][a]
            out.append(x)
        return out

    @cached_property
    def arrays(self) -> dict[str, np.ndarray]:
        """int64 copies of the tables for compiled kernels."""
        return {
            "add": np.array(self.add_table, dtype=np.int64),
            "sub": np.array(self.sub_table, dtype=np.int64),
            "mul": np.array(self.mul_table, dtype=np.int64),
            "neg": np.array(self.neg_table, dtype=np.int64),
            "inv": np.array(self.inv_table, dtype=np.int64),
        }

    # scalar helpers ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.sub_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            from ..errors import DivideByZero
            raise DivideByZero("inverse of 0 in a finite field")
        return self.inv_table[a]

    def pow(self, a: int, n: int) -> int:
        out = 1
        for _ in range(n):
            out = self.mul_table[out][a]
        return out

    def element_text(self, a: int) -> str:
        if self.e == 1:
            return str(a)
        return "/".join(str(d) for d in self.digits(a))

    def parse_element(self, text: str) -> int:
        text = text.strip()
        try:
            if self.e == 1:
                return int(text) % self.p
            return self.from_digits(int(t) for t in text.split("/"))
        except ValueError as exc:
            raise InvalidInput(f"bad field element {text!r}") from exc


def field_make(p: int, e: int = 1) -> FieldSpec:
    """Build F_{p^e}; the modulus is the lowest-index monic irreducible."""
    if p < 2 or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise InvalidInput("extension degree must be >= 1")
    if p**e > MAX_ORDER:
        raise InvalidInput(f"q = {p}^{e} exceeds the supported bound {MAX_ORDER}")
    if e == 1:
        return FieldSpec(p, 1, None)
    return FieldSpec(p, e, _lowest_irreducible(p, e))


def field_of_order(q: int) -> FieldSpec:
    p, e = prime_power(q)
    return field_make(p, e)
