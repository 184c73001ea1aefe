"""Dense univariate polynomials over a FieldSpec.

Coefficients are stored constant term first.  The zero polynomial has an
empty coefficient tuple and degree -1.  A polynomial's *index* is its
coefficient vector read as a base-q integer; ascending index is the
enumeration order used throughout the package.
"""

from __future__ import annotations

from typing import Iterator

from ..errors import DivideByZero, InvalidInput
from .field import FieldSpec

KARATSUBA_CUTOFF = 64


def _strip(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _add_lists(F: FieldSpec, a, b) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    if F.e == 1:
        p = F.p
        for i, y in enumerate(b):
            out[i] = (out[i] + y) % p
    else:
        add = F.add_table
        for i, y in enumerate(b):
            out[i] = add[out[i]][y]
    return out


def _sub_lists(F: FieldSpec, a, b) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    if F.e == 1:
        p = F.p
        for i, y in enumerate(b):
            out[i] = (out[i] - y) % p
    else:
        sub = F.sub_table
        for i, y in enumerate(b):
            out[i] = sub[out[i]][y]
    return out


def _school_mul(F: FieldSpec, a, b) -> list[int]:
    if not a or not b:
        return []
    if F.e == 1:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        p = F.p
        return [c % p for c in out]
    add, mul = F.add_table, F.mul_table
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            row = mul[x]
            for j, y in enumerate(b):
                out[i + j] = add[out[i + j]][row[y]]
    return out


def _karatsuba(F: FieldSpec, a, b) -> list[int]:
    if len(a) <= KARATSUBA_CUTOFF or len(b) <= KARATSUBA_CUTOFF:
        return _school_mul(F, a, b)
    half = max(len(a), len(b)) // 2
    a0, a1 = a[:half], a[half:]
    b0, b1 = b[:half], b[half:]
    low = _karatsuba(F, a0, b0)
    high = _karatsuba(F, a1, b1)
    mid = _karatsuba(F, _add_lists(F, a0, a1), _add_lists(F, b0, b1))
    mid = _sub_lists(F, _sub_lists(F, mid, low), high)
    out = [0] * (len(a) + len(b) - 1)
    out = _add_lists(F, out, low)
    out = _add_lists(F, out, [0] * half + mid)
    out = _add_lists(F, out, [0] * (2 * half) + high)
    return out[: len(a) + len(b) - 1]


def _divmod_lists(F: FieldSpec, a, b) -> tuple[list[int], list[int]]:
    db = len(b) - 1
    if len(a) <= db:
        return [], list(a)
    r = list(a)
    quo = [0] * (len(a) - db)
    if F.e == 1:
        p = F.p
        inv = pow(b[-1], p - 2, p)
        for i in range(len(a) - 1, db - 1, -1):
            c = (r[i] % p) * inv % p
            if c:
                quo[i - db] = c
                off = i - db
                for j in range(db + 1):
                    r[off + j] -= c * b[j]
        return quo, _strip([c % p for c in r[:db]])
    sub, mul = F.sub_table, F.mul_table
    inv = F.inv_table[b[-1]]
    for i in range(len(a) - 1, db - 1, -1):
        c = mul[r[i]][inv]
        if c:
            quo[i - db] = c
            off = i - db
            row = mul[c]
            for j in range(db + 1):
                r[off + j] = sub[r[off + j]][row[b[j]]]
    return quo, _strip(r[:db])


class Poly:
    """Immutable polynomial in F_q[t]."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldSpec, coeffs=()):
        q = field.q
        cs = []
        for c in coeffs:
            c = int(c)
            if not 0 <= c < q:
                raise InvalidInput(f"coefficient {c} outside 0..{q - 1}")
            cs.append(c)
        self.field = field
        self.coeffs = tuple(_strip(cs))
        self._hash = None

    @classmethod
    def _raw(cls, field: FieldSpec, cs) -> "Poly":
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(_strip(list(cs)))
        obj._hash = None
        return obj

    # constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls._raw(field, ())

    @classmethod
    def one(cls, field):
        return cls._raw(field, (1,))

    @classmethod
    def t(cls, field):
        return cls._raw(field, (0, 1))

    @classmethod
    def constant(cls, field, c: int):
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field, d: int, c: int = 1):
        return cls(field, [0] * d + [c])

    @classmethod
    def from_index(cls, field, idx: int) -> "Poly":
        q = field.q
        cs = []
        while idx:
            idx, c = divmod(idx, q)
            cs.append(c)
        return cls._raw(field, cs)

    @classmethod
    def parse(cls, field, text: str) -> "Poly":
        """Read the comma-separated, constant-first text format."""
        text = text.strip()
        if text in ("", "0"):
            return cls.zero(field)
        return cls(field, [field.parse_element(tok) for tok in text.split(",")])

    # basic properties --------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def index(self) -> int:
        q = self.field.q
        out = 0
        for c in reversed(self.coeffs):
            out = out * q + c
        return out

    def text(self) -> str:
        if not self.coeffs:
            return "0"
        return ",".join(self.field.element_text(c) for c in self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        F = self.field
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = F.element_text(c) if F.e == 1 else f"({F.element_text(c)})"
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms)

    def __repr__(self):
        return f"Poly({self})"

    # comparisons -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.p, self.field.e, self.coeffs))
        return self._hash

    def sort_key(self) -> tuple[int, int]:
        """Canonical order: degree, then index."""
        return (self.degree, self.index())

    def __lt__(self, other: "Poly"):
        return self.sort_key() < other.sort_key()

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise InvalidInput("polynomials over different fields")
            return other
        if isinstance(other, int):
            c = other % self.field.p if self.field.e == 1 else other
            return Poly.constant(self.field, c)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.field, _add_lists(self.field, self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.field, _sub_lists(self.field, self.coeffs, other.coeffs))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        neg = self.field.neg_table
        return Poly._raw(self.field, [neg[c] for c in self.coeffs])

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.field, _karatsuba(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        row = self.field.mul_table[c]
        return Poly._raw(self.field, [row[x] for x in self.coeffs])

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise DivideByZero("polynomial division by zero")
        quo, rem = _divmod_lists(self.field, self.coeffs, other.coeffs)
        return Poly._raw(self.field, quo), Poly._raw(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n: int):
        if n < 0:
            raise InvalidInput("negative exponent")
        out, base = Poly.one(self.field), self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def monic(self) -> "Poly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(self.field.inv(self.lc))

    def __call__(self, x: int) -> int:
        add, mul = self.field.add_table, self.field.mul_table
        acc = 0
        for c in reversed(self.coeffs):
            acc = add[mul[acc][x]][c]
        return acc

    def derivative(self) -> "Poly":
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            c = self.coeffs[i]
            # i * c as repeated addition in characteristic p
            k = i % F.p
            acc = 0
            for _ in range(k):
                acc = F.add_table[acc][c]
            out.append(acc)
        return Poly._raw(F, out)

    def pth_root(self) -> "Poly":
        """Inverse of f -> f**p for f whose derivative vanishes."""
        F = self.field
        p = F.p
        # the inverse Frobenius on F_q is a -> a**(q/p)
        root = [F.pow(c, F.q // p) for c in self.coeffs[::p]]
        if any(self.coeffs[i] for i in range(len(self.coeffs)) if i % p):
            raise InvalidInput("not a p-th power")
        return Poly._raw(F, root)

    def shift(self, n: int) -> "Poly":
        """Multiply by t**n."""
        if not self.coeffs:
            return self
        return Poly._raw(self.field, (0,) * n + self.coeffs)


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, u, v) with u*a + v*b = g and g monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while not r1.is_zero():
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = F.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def inverse_mod(a: Poly, m: Poly) -> Poly | None:
    """Inverse of a modulo m, or None when gcd(a, m) != 1."""
    if m.degree <= 0:
        return Poly.zero(a.field)
    g, u, _ = xgcd(a % m, m)
    if g.degree != 0:
        return None
    return u % m


def powmod(base: Poly, n: int, mod: Poly) -> Poly:
    out = Poly.one(base.field) % mod
    base = base % mod
    while n:
        if n & 1:
            out = (out * base) % mod
        n >>= 1
        if n:
            base = (base * base) % mod
    return out


def poly_arith(a: Poly, b: Poly, op: str):
    """Dispatch one of add, sub, mul, divrem, gcd."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divrem":
        return divmod(a, b)
    if op == "gcd":
        return gcd(a, b)
    raise InvalidInput(f"unknown operation {op!r}")


def enumerate_monic(field: FieldSpec, d: int, start: int = 0, stop: int | None = None) -> Iterator[Poly]:
    """Monic polynomials of degree d in ascending index order.

    ``start`` and ``stop`` select a contiguous slice of the q**d
    polynomials, so disjoint slices can be handed to separate workers.
    """
    total = field.q**d
    stop = total if stop is None else min(stop, total)
    q = field.q
    for low in range(start, stop):
        cs = []
        for _ in range(d):
            low, c = divmod(low, q)
            cs.append(c)
        cs.append(1)
        yield Poly._raw(field, cs)


def enumerate_below(field: FieldSpec, n: int) -> Iterator[Poly]:
    """All polynomials of degree < n (including 0) in index order."""
    for idx in range(field.q**n):
        yield Poly.from_index(field, idx)
