"""Systems of affine linear forms with polynomial coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..errors import InvalidInput
from ..ffpoly import FieldSpec, Poly
from ..ffpoly.vector import AffineMap


@dataclass(frozen=True)
class LinearSystem:
    """Forms psi_j(x) = sum_i forms[j][i] * x_i shifted by shifts[j].

    Coefficients have degree < k.
    """

    field: FieldSpec
    forms: tuple[tuple[Poly, ...], ...]
    shifts: tuple[Poly, ...]
    k: int = 1

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(tuple(row) for row in self.forms))
        object.__setattr__(self, "shifts", tuple(self.shifts))
        self.validate()

    @property
    def s(self) -> int:
        return len(self.forms)

    @property
    def m(self) -> int:
        return len(self.forms[0]) if self.forms else 0

    def validate(self) -> None:
        if not self.forms:
            raise InvalidInput("a system needs at least one form")
        if len(self.shifts) != self.s:
            raise InvalidInput("one shift per form is required")
        if any(len(row) != self.m for row in self.forms) or self.m == 0:
            raise InvalidInput("forms must share a positive number of variables")
        size = self.field.q**self.k
        if self.s > size * 2**size:
            raise InvalidInput(f"s = {self.s} exceeds q^k 2^(q^k) = {size * 2**size}")
        if self.m > 2 * size:
            raise InvalidInput(f"m = {self.m} exceeds 2 q^k = {2 * size}")
        for row in self.forms:
            for c in row:
                if c.degree >= self.k:
                    raise InvalidInput(f"coefficient {c} has degree >= k = {self.k}")
        for i, j in combinations(range(self.s), 2):
            if self.proportional(i, j):
                raise InvalidInput(f"forms {i} and {j} are proportional")

    def proportional(self, i: int, j: int) -> bool:
        """All 2x2 minors of rows i, j vanish (a zero row counts as proportional)."""
        a, b = self.forms[i], self.forms[j]
        if all(c.is_zero() for c in a) or all(c.is_zero() for c in b):
            return True
        for u, v in combinations(range(self.m), 2):
            if not (a[u] * b[v] - a[v] * b[u]).is_zero():
                return False
        return True

    def evaluate(self, j: int, xs) -> Poly:
        out = self.shifts[j]
        for c, x in zip(self.forms[j], xs):
            out = out + c * x
        return out

    def output_len(self, n: int) -> int:
        """Coefficient count covering psi_j(x) + b_j for deg x_i < n."""
        top = max(n + self.k - 1, max(b.degree + 1 for b in self.shifts))
        return max(top, 1)

    def form_maps(self, n: int) -> list[AffineMap]:
        out_len = self.output_len(n)
        lens = [n] * self.m
        return [AffineMap.from_poly_function(self.field, lens, out_len,
                                             lambda xs, j=j: self.evaluate(j, xs))
                for j in range(self.s)]

    def text(self) -> str:
        rows = "|".join(";".join(c.text() for c in row) for row in self.forms)
        shifts = "|".join(b.text() for b in self.shifts)
        return f"forms={rows} shifts={shifts} k={self.k}"

    @classmethod
    def parse(cls, field: FieldSpec, forms: str, shifts: str | None, k: int = 1) -> "LinearSystem":
        """Rows separated by '|', coefficients by ';' (polynomial text format)."""
        rows = [tuple(Poly.parse(field, c) for c in row.split(";")) for row in forms.split("|")]
        if shifts is None or not shifts.strip():
            bs = [Poly.zero(field)] * len(rows)
        else:
            bs = [Poly.parse(field, b) for b in shifts.split("|")]
        return cls(field, tuple(rows), tuple(bs), k)
