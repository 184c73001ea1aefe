"""Tabulated measures on degree boxes {deg x < n}.

A measure exposes ``table(n)`` (values in index order) and pointwise
evaluation.  The sieve measure builds its tables by sieving: for each
squarefree M coprime to W, the x with M | W x + alpha form one residue
class mod M, and the compiled kernel adds mu(M) phi(deg M / R) along it.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Protocol

import numpy as np

from ..errors import InvalidInput
from ..ffpoly import FieldSpec, Poly, inverse_mod
from ..ffpoly.kernels import lambda_degree
from ..ffpoly.tables import mobius_table
from ..reduce import array_mean
from .weights import SieveParams, nu_r


class Measure(Protocol):
    field: FieldSpec
    label: str

    def table(self, n: int) -> np.ndarray: ...

    def __call__(self, x: Poly) -> float: ...


def _codes(f: Poly, length: int | None = None) -> np.ndarray:
    cs = list(f.coeffs)
    if length is not None:
        cs += [0] * (length - len(cs))
    return np.array(cs, dtype=np.int64)


def _unit_table(params: SieveParams) -> np.ndarray:
    """u0 for every residue rho mod W: alpha / rho mod W, or -1 if not a unit."""
    F, W, alpha = params.field, params.W, params.alpha
    size = F.q**W.degree
    out = np.full(size, -1, dtype=np.int64)
    for idx in range(size):
        rho = Poly.from_index(F, idx)
        inv = inverse_mod(rho, W)
        if inv is not None:
            out[idx] = ((alpha * inv) % W).index()
    return out


def lambda_table(params: SieveParams, n: int) -> np.ndarray:
    """Lambda_R(W x + alpha) for every x of degree < n, in index order.

    The single x with W x + alpha = 0 (possible only when W = 1) has no
    divisor; its entry is set to 0.
    """
    F = params.field
    lam = np.zeros(F.q**n, dtype=np.float64)
    W = _codes(params.W)
    alpha = _codes(params.alpha, max(1, len(params.alpha.coeffs)))
    u0 = _unit_table(params)
    arr = F.arrays
    top = max(params.W.degree, params.alpha.degree) + n - 1
    dmax = min(int(math.ceil(params.R)) - 1, top)
    for d in range(dmax + 1):
        weight = params.bump(d / params.R)
        if weight == 0.0:
            continue
        lambda_degree(mobius_table(F, d), d, n, F.p, F.q, F.e, arr["add"], arr["sub"],
                      arr["mul"], W, alpha, u0, weight, lam)
    dead = excluded_index(params, n)
    if dead is not None:
        lam[dead] = 0.0
    return lam


def excluded_index(params: SieveParams, n: int) -> int | None:
    """Index of the x with W x + alpha = 0 inside the box, if any."""
    if params.W.degree == 0 and params.alpha.degree < n:
        return (-params.alpha).index()
    return None


class SieveMeasure:
    """nu_r for fixed parameters; tables are cached per box degree."""

    def __init__(self, params: SieveParams):
        self.params = params
        self.field = params.field
        self.label = f"nu[{params.bump.label},{params.normalization}]"
        self._tables: dict[int, np.ndarray] = {}

    def lambda_table(self, n: int) -> np.ndarray:
        return lambda_table(self.params, n)

    def table(self, n: int | None = None) -> np.ndarray:
        n = self.params.box_degree() if n is None else n
        if n not in self._tables:
            lam = lambda_table(self.params, n)
            tab = self.params.constant * lam * lam
            tab.setflags(write=False)
            self._tables[n] = tab
        return self._tables[n]

    def __call__(self, x: Poly) -> float:
        if (self.params.W * x + self.params.alpha).is_zero():
            return 0.0
        return nu_r(x, self.params)


@lru_cache(maxsize=8)
def sieve_measure(params: SieveParams) -> SieveMeasure:
    """Shared measure per parameter set, so tables are built once."""
    return SieveMeasure(params)


class UnitMeasure:
    """The constant measure 1."""

    label = "unit"

    def __init__(self, field: FieldSpec):
        self.field = field

    def table(self, n: int) -> np.ndarray:
        return np.ones(self.field.q**n, dtype=np.float64)

    def __call__(self, x: Poly) -> float:
        return 1.0


class TableMeasure:
    """A measure given by one explicit table on a fixed box."""

    def __init__(self, field: FieldSpec, values: np.ndarray, label: str = "table"):
        self.field = field
        self.values = np.asarray(values, dtype=np.float64)
        self.label = label
        n = round(math.log(self.values.shape[0], field.q))
        if field.q**n != self.values.shape[0]:
            raise InvalidInput("table length is not a power of q")
        self.n = n

    def table(self, n: int) -> np.ndarray:
        if n != self.n:
            raise InvalidInput(f"table defined on degree < {self.n}, requested {n}")
        return self.values

    def __call__(self, x: Poly) -> float:
        return float(self.values[x.index()])


def box_mean(measure: Measure, n: int, threads: int = 1) -> float:
    return array_mean(measure.table(n), threads)
