"""Direct-sum correlation estimators and the auto-correlation calibration."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from itertools import combinations

import numpy as np

from ..divisor import divisor_of
from ..errors import BudgetExceeded, DegenerateShifts, InvalidInput
from ..ffpoly import Poly
from ..ffpoly.vector import AffineMap
from ..reduce import pairwise, partitioned_sum
from ..report import fmt_float
from ..sieve.measure import Measure, sieve_measure
from ..sieve.weights import SieveParams
from .system import LinearSystem

DEFAULT_BUDGET = 1 << 26
DEFAULT_SEED = 0x243F6A8885A308D3


@dataclass
class CorrelationReport:
    estimate: float
    r: int
    window: int
    terms: int
    mode: str
    stderr: float = 0.0
    seed: int | None = None
    system: str = ""
    measure: str = ""
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    CSV_HEADER = "r,window,estimate,stderr,terms,seed"

    def csv_row(self) -> str:
        seed = "" if self.seed is None else str(self.seed)
        return f"{self.r},{self.window},{fmt_float(self.estimate)},{fmt_float(self.stderr)},{self.terms},{seed}"


def _resolve(measure_or_params) -> tuple[Measure, SieveParams | None]:
    if isinstance(measure_or_params, SieveParams):
        return sieve_measure(measure_or_params), measure_or_params
    params = getattr(measure_or_params, "params", None)
    return measure_or_params, params


def cross_correlation(sys: LinearSystem, measure, window: int, *, r: int | None = None,
                      budget: int = DEFAULT_BUDGET, mode: str = "exhaustive",
                      samples: int = 1 << 16, seed: int = DEFAULT_SEED,
                      threads: int = 1) -> CorrelationReport:
    """Average of prod_j nu(psi_j(x) + b_j) over x in the box, x_i of degree < n.

    ``measure`` is a Measure or SieveParams.  The box is deg x_i < window +
    deg g for the twist g of the parameters (window alone otherwise).
    """
    nu, params = _resolve(measure)
    if params is not None:
        n = params.box_degree(window)
        r = params.r if r is None else r
        if window > params.r:
            raise InvalidInput("window must not exceed r")
    else:
        n = window
        r = window if r is None else r
    q = sys.field.q
    terms = q ** (n * sys.m)
    maps = sys.form_maps(n)
    table = nu.table(sys.output_len(n))
    echo = params.echo() if params is not None else {}
    if mode == "exhaustive":
        if terms > budget:
            raise BudgetExceeded(f"{terms} terms exceed the budget {budget}; use sampling mode")

        def chunk(lo, hi):
            g = np.arange(lo, hi, dtype=np.int64)
            prod = np.ones(hi - lo)
            for amap in maps:
                prod *= table[amap.apply_combined(g)]
            return float(np.sum(prod))

        total = partitioned_sum(chunk, terms, threads)
        return CorrelationReport(total / terms, r, window, terms, "exhaustive", 0.0, None,
                                 sys.text(), nu.label, echo)
    if mode != "sampling":
        raise InvalidInput(f"unknown mode {mode!r}")
    return _stratified(sys, maps, table, n, r, window, terms, samples, seed, nu.label, echo)


def _stratified(sys, maps, table, n, r, window, terms, samples, seed, label, echo) -> CorrelationReport:
    """Strata fix the leading coefficient of every variable; equal allocation."""
    q, m = sys.field.q, sys.m
    rng = np.random.Generator(np.random.PCG64(seed))
    strata = q**m
    per = max(2, math.ceil(samples / strata))
    low_size = q ** (n - 1) if n >= 1 else 1
    means, variances = [], []
    for st in range(strata):
        lead = [(st // q**i) % q for i in range(m)]
        parts = [rng.integers(0, low_size, size=per, dtype=np.int64) + lead[i] * low_size
                 for i in range(m)]
        prod = np.ones(per)
        for amap in maps:
            prod *= table[amap(*parts)]
        means.append(float(np.mean(prod)))
        variances.append(float(np.var(prod, ddof=1)) / per)
    estimate = pairwise(means) / strata
    stderr = math.sqrt(pairwise(variances)) / strata
    return CorrelationReport(estimate, r, window, strata * per, "sampling", stderr, seed,
                             sys.text(), label, echo)


# --- auto-correlation -----------------------------------------------------

def pair_primes(yvec, W: Poly) -> list[Poly]:
    """Primes P not dividing W, one entry per pair i < j with P | y_i - y_j."""
    out = []
    for a, b in combinations(yvec, 2):
        diff = a - b
        if diff.is_zero():
            raise DegenerateShifts("shifts must be pairwise distinct")
        for P, _ in divisor_of(diff).primes:
            if (W % P).is_zero():
                continue
            out.append(P)
    return out


def auto_lhs(yvec, measure, window: int) -> float:
    """Average over deg x < window of prod_i nu(x + y_i)."""
    nu, params = _resolve(measure)
    F = yvec[0].field
    for a, b in combinations(yvec, 2):
        if (a - b).is_zero():
            raise DegenerateShifts("shifts must be pairwise distinct")
    n = params.box_degree(window) if params is not None else window
    top = max([n] + [y.degree + 1 for y in yvec])
    table = nu.table(top)
    x = np.arange(F.q**n, dtype=np.int64)
    prod = np.ones(x.shape[0])
    for y in yvec:
        amap = AffineMap.from_poly_function(F, [n], top, lambda xs, y=y: xs[0] + y)
        prod *= table[amap(x)]
    return partitioned_sum(lambda lo, hi: float(np.sum(prod[lo:hi])), x.shape[0]) / x.shape[0]


@dataclass(frozen=True)
class AutoCalibration:
    """Frozen constants of the bound C_fit * prod (1 + C_s / N P)."""

    q: int
    s: int
    window: int
    C_fit: float
    C_s: float
    family_size: int
    seed: int
    params: dict = field(default_factory=dict, compare=False)

    def bound(self, yvec, W: Poly) -> float:
        out = self.C_fit
        for P in pair_primes(yvec, W):
            out *= 1 + self.C_s / P.field.q**P.degree
        return out

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "AutoCalibration":
        return cls(**json.loads(text))


def random_shifts(field, s: int, window: int, count: int, seed: int) -> list[tuple[Poly, ...]]:
    """Tuples of s pairwise distinct shifts of degree < window."""
    rng = np.random.Generator(np.random.PCG64(seed))
    size = field.q**window
    out = []
    for _ in range(count):
        picks = rng.choice(size, size=s, replace=False)
        out.append(tuple(Poly.from_index(field, int(v)) for v in picks))
    return out


C_S_GRID = tuple(np.round(np.arange(0.0, 8.0001, 0.125), 6))


def calibrate_auto(measure, s: int, window: int, family_size: int = 200,
                   seed: int = DEFAULT_SEED, grid=C_S_GRID) -> AutoCalibration:
    """Fit C_s and C_fit on a training family of shift tuples.

    For each candidate C_s the smallest admissible C_fit is the largest
    ratio lhs / prod(1 + C_s / N P); the pair minimizing the mean log
    bound over the family is kept.
    """
    nu, params = _resolve(measure)
    F = nu.field
    W = params.W if params is not None else Poly.one(F)
    family = random_shifts(F, s, window, family_size, seed)
    lhs = np.array([auto_lhs(y, nu if params is None else params, window) for y in family])
    norms_per = [[P.field.q**P.degree for P in pair_primes(y, W)] for y in family]
    best = None
    for C_s in grid:
        prods = np.array([math.prod(1 + C_s / N for N in ns) for ns in norms_per])
        C_fit = float(np.max(lhs / prods))
        score = float(np.mean(np.log(C_fit * prods)))
        if best is None or score < best[0] - 1e-15:
            best = (score, C_fit, float(C_s))
    _, C_fit, C_s = best
    # nudge up by a few ulps so the training envelope holds after rounding
    C_fit = float(np.nextafter(np.nextafter(C_fit, np.inf), np.inf))
    echo = params.echo() if params is not None else {}
    return AutoCalibration(F.q, s, window, C_fit, C_s, family_size, seed, echo)


def auto_correlation(yvec, measure, window: int, calibration: AutoCalibration) -> tuple[float, float]:
    """(direct average, calibrated bound) for the shifts yvec."""
    nu, params = _resolve(measure)
    W = params.W if params is not None else Poly.one(nu.field)
    pair_primes(yvec, W)  # raises on repeated shifts
    lhs = auto_lhs(yvec, measure, window)
    return lhs, calibration.bound(yvec, W)
