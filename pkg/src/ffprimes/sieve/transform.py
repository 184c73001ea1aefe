"""The weighted transform phi_hat and the double-integral constant c_phi.

    phi_hat(y) = integral over [-1, 1] of exp(t) * phi(t) * exp(i*y*t) dt
    c_phi      = double integral of a(y) a(y') / (2 + i(y + y')),
                 a(y) = (1 + i*y) * phi_hat(y)

Both use composite Gauss-Legendre rules.  c_phi is also available through
the identity c_phi = 4 pi^2 * integral_0^1 phi'(u)^2 du, which needs no
transform at all and serves as an independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from ..errors import NonPositiveResult, QuadratureNonConvergence
from .bump import BumpFn

GL_ORDER = 16
PHI_HAT_TOL = 1e-9
CPHI_TOL = 1e-8
CPHI_PANEL_WIDTH = 2.0
CPHI_NODES = 8
CPHI_T_START = 50.0
CPHI_T_MAX = 6400.0
CPHI_IMAG_TOL = 1e-6


def _composite_rule(a: float, b: float, panels: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _panels_for(ymax: float) -> int:
    # keep |y| * panel width / 2 at most ~8 radians per 16-point panel
    return max(32, int(math.ceil(ymax / 8.0)))


def _phi_hat_fixed(y: np.ndarray, bump: BumpFn, panels: int, block: int = 512) -> np.ndarray:
    t, w = _composite_rule(-1.0, 1.0, panels, GL_ORDER)
    g = w * np.exp(t) * bump.fn(t)
    out = np.empty(y.shape[0], dtype=np.complex128)
    for lo in range(0, y.shape[0], block):
        yy = y[lo:lo + block]
        out[lo:lo + block] = np.exp(1j * np.outer(yy, t)) @ g
    return out


def phi_hat(x, bump: BumpFn):
    """phi_hat at a real point or array, checked against a refined rule."""
    scalar = np.ndim(x) == 0
    y = np.atleast_1d(np.asarray(x, dtype=np.float64))
    panels = _panels_for(float(np.max(np.abs(y))) if y.size else 0.0)
    coarse = _phi_hat_fixed(y, bump, panels)
    for _ in range(4):
        fine = _phi_hat_fixed(y, bump, 2 * panels)
        diff = float(np.max(np.abs(fine - coarse))) if y.size else 0.0
        if diff <= PHI_HAT_TOL:
            return complex(fine[0]) if scalar else fine
        coarse, panels = fine, 2 * panels
    raise QuadratureNonConvergence(f"phi_hat refinement levels differ by {diff:.3e}")


@dataclass(frozen=True)
class CPhiResult:
    value: float
    imag_residue: float
    T: float
    last_change: float
    nodes: int


def _kernel_block(ya, aa, yb, ab) -> complex:
    k = 1.0 / (2.0 + 1j * (ya[:, None] + yb[None, :]))
    return complex(aa @ k @ ab)


def _pair_sum(y_old, a_old, y_new, a_new, block: int = 2048) -> complex:
    """2 * sum old x new + sum new x new, using the symmetry of the kernel."""
    total = 0j
    for lo in range(0, y_new.shape[0], block):
        yb, ab = y_new[lo:lo + block], a_new[lo:lo + block]
        for lo2 in range(0, y_old.shape[0], block):
            total += 2 * _kernel_block(y_old[lo2:lo2 + block], a_old[lo2:lo2 + block], yb, ab)
        total += _kernel_block(yb, ab, yb, ab)
        for lo2 in range(lo + block, y_new.shape[0], block):
            total += 2 * _kernel_block(y_new[lo2:lo2 + block], a_new[lo2:lo2 + block], yb, ab)
    return total


def _band_nodes(bump: BumpFn, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    panels = int(round((hi - lo) / CPHI_PANEL_WIDTH))
    y, w = _composite_rule(lo, hi, panels, CPHI_NODES)
    a = w * (1 + 1j * y) * _phi_hat_fixed(y, bump, _panels_for(max(abs(lo), abs(hi))))
    return y, a


@lru_cache(maxsize=8)
def c_phi_details(bump: BumpFn) -> CPhiResult:
    """Tensor Gauss-Legendre over [-T, T]^2, doubling T until stable.

    Doubling adds two outer bands of nodes; the inner grid is reused, so
    each level only pays for the new rows and columns of the kernel.
    """
    T = CPHI_T_START
    y, a = _band_nodes(bump, -T, T)
    total = _pair_sum(np.empty(0), np.empty(0, dtype=complex), y, a)
    prev = None
    while True:
        T2 = 2 * T
        yl, al = _band_nodes(bump, -T2, -T)
        yr, ar = _band_nodes(bump, T, T2)
        y_new = np.concatenate([yl, yr])
        a_new = np.concatenate([al, ar])
        total2 = total + _pair_sum(y, a, y_new, a_new)
        change = abs(total2.real - total.real)
        y, a = np.concatenate([y, y_new]), np.concatenate([a, a_new])
        prev, total, T = total, total2, T2
        if change < CPHI_TOL * abs(total.real):
            break
        if T >= CPHI_T_MAX:
            raise QuadratureNonConvergence(f"c_phi still moving by {change:.3e} at T={T}")
    value = total.real
    if value <= 0:
        raise NonPositiveResult(f"c_phi = {value}")
    if abs(total.imag) > CPHI_IMAG_TOL * abs(value):
        raise QuadratureNonConvergence(f"imaginary residue {total.imag:.3e}")
    return CPhiResult(value, float(total.imag), T, change, int(y.shape[0]))


def c_phi(bump: BumpFn) -> float:
    return c_phi_details(bump).value


@lru_cache(maxsize=8)
def c_phi_time_domain(bump: BumpFn) -> float:
    """4 pi^2 * integral of phi'(u)^2 over [0, 1], by adaptive quadrature."""
    val, _ = integrate.quad(lambda u: bump.derivative(np.array([u]))[0] ** 2, 0.0, 1.0,
                            epsabs=0.0, epsrel=1e-13, limit=400)
    return 4 * math.pi**2 * val


def derivative_energy(bump: BumpFn) -> float:
    """integral of phi'(u)^2 over [0, 1]."""
    return c_phi_time_domain(bump) / (4 * math.pi**2)
