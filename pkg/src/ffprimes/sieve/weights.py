"""Truncated von Mangoldt weights, sieve parameters and the measure nu_r.

Normalization
-------------
Two constants are offered.  ``literal`` is

    phi_K(W) * R * res / (c_phi * q**deg W),      res = 1 / ln q,

the constant as usually written.  Its box mean tends to
res / (4 pi^2), not 1, because c_phi carries a (2 pi)^2 from the transform
convention and Lambda is truncated in units of degree rather than of
log-norm (a factor ln q).  ``calibrated`` (the default) multiplies by
4 pi^2 ln q, i.e. it equals phi_K(W) * R / (E * q**deg W) with
E = integral_0^1 phi'(u)^2 du, and its box mean tends to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

from ..divisor import CurveModel, Divisor, divisor_of, divisors_below, mobius
from ..errors import AlphaNotCoprime, DegenerateR, InvalidInput, ZeroPolynomial
from ..ffpoly import Poly, factor, gcd
from ..ffpoly.tables import irreducible_polys
from ..zeta import zeta_residue
from .bump import MOLLIFIER, BumpFn
from .transform import c_phi

NORMALIZATIONS = ("calibrated", "literal")


def lambda_R(d: Divisor, R: float, bump: BumpFn = MOLLIFIER) -> float:
    """Sum over M <= d of mu(M) * phi(deg M / R)."""
    if R <= 0:
        raise InvalidInput("R must be positive")
    total = 0.0
    for M in divisors_below(d):
        mu = mobius(M)
        if mu:
            total += mu * bump(M.degree / R)
    return total


def phi_K(W: Poly) -> int:
    """Order of the unit group of F_q[t]/(W)."""
    if W.is_zero():
        raise ZeroPolynomial("phi_K of the zero polynomial")
    q = W.field.q
    out = 1
    for P, e in factor(W):
        out *= (q**P.degree - 1) * q ** (P.degree * (e - 1))
    return out


def small_primes_product(field, w: int) -> Poly:
    """Product of all monic irreducibles of degree <= w."""
    out = Poly.one(field)
    for d in range(1, w + 1):
        for P in irreducible_polys(field, d):
            out = out * P
    return out


def default_w(r: int) -> int:
    if r <= math.e:
        return 0
    return max(0, int(math.floor(math.log(math.log(r)))))


def schedule_R(r: int, k: int, q: int) -> float:
    """R = r / (8 * n * 2**n) with n = q**k polynomials of degree < k."""
    n = q**k
    return r / (8 * n * 2**n)


@dataclass(frozen=True)
class SieveParams:
    r: int
    k: int
    R: float
    w: int
    W: Poly
    alpha: Poly
    curve: CurveModel
    bump: BumpFn = MOLLIFIER
    normalization: str = "calibrated"
    R_source: str = field(default="schedule", compare=False)

    @property
    def field(self):
        return self.curve.field

    @property
    def q(self) -> int:
        return self.curve.field.q

    @cached_property
    def c_phi(self) -> float:
        return c_phi(self.bump)

    @cached_property
    def phi_K_W(self) -> int:
        return phi_K(self.W)

    @property
    def residue(self) -> float:
        return zeta_residue(self.q)

    @cached_property
    def literal_constant(self) -> float:
        return self.phi_K_W * self.R * self.residue / (self.c_phi * self.q**self.W.degree)

    @cached_property
    def constant(self) -> float:
        """Multiplier of Lambda^2 in nu_r."""
        if self.normalization == "literal":
            return self.literal_constant
        return self.literal_constant * 4 * math.pi**2 * math.log(self.q)

    def box_degree(self, r: int | None = None) -> int:
        return self.curve.box_degree(self.r if r is None else r)

    def with_r(self, r: int) -> "SieveParams":
        """Same parameters at another window, R rescheduled unless overridden."""
        R = self.R if self.R_source == "override" else schedule_R(r, self.k, self.q)
        if R <= 1:
            raise DegenerateR(f"R = {R} <= 1 at r = {r}")
        return SieveParams(r, self.k, R, self.w, self.W, self.alpha, self.curve, self.bump,
                           self.normalization, self.R_source)

    def echo(self) -> dict:
        """Parameter block written at the head of every output."""
        return {
            "q": self.q,
            "k": self.k,
            "r": self.r,
            "R": self.R,
            "w": self.w,
            "W": self.W.text(),
            "alpha": self.alpha.text(),
            "bump_label": self.bump.label,
            "c_phi": self.c_phi,
            "phi_K_W": self.phi_K_W,
            "residue": self.residue,
            "g": self.curve.g.text(),
            "normalization": self.normalization,
            "R_source": self.R_source,
        }


def make_params(r: int, k: int, curve: CurveModel, alpha: Poly | None = None,
                bump: BumpFn = MOLLIFIER, w_override: int | None = None,
                R_override: float | None = None, normalization: str = "calibrated") -> SieveParams:
    if normalization not in NORMALIZATIONS:
        raise InvalidInput(f"normalization must be one of {NORMALIZATIONS}")
    F = curve.field
    if R_override is not None:
        R, source = float(R_override), "override"
    else:
        R, source = schedule_R(r, k, F.q), "schedule"
    if R <= 1:
        raise DegenerateR(f"R = {R} <= 1 (r = {r}, k = {k}, q = {F.q})")
    w = default_w(r) if w_override is None else int(w_override)
    if w < 0:
        raise InvalidInput("w must be >= 0")
    W = small_primes_product(F, w)
    alpha = Poly.one(F) if alpha is None else alpha
    if gcd(alpha, W) != Poly.one(F):
        raise AlphaNotCoprime(f"gcd({alpha}, {W}) != 1")
    return SieveParams(r, k, R, w, W, alpha, curve, bump, normalization, source)


def twisted(x: Poly, params: SieveParams) -> Poly:
    return params.W * x + params.alpha


def nu_r(x: Poly, params: SieveParams) -> float:
    """constant * Lambda_R((W x + alpha))**2, evaluated by factoring."""
    n = twisted(x, params)
    if n.is_zero():
        raise InvalidInput("W*x + alpha vanishes")
    lam = lambda_R(divisor_of(n), params.R, params.bump)
    return params.constant * lam * lam
