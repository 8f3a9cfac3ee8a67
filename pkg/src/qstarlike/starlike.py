"""Order of q-starlikeness: closed form, grid infimum, membership tests.

The central quantity is w(z) = z (D_q f)(z) / f(z) for a normalized series
f.  Its infimum of real part over the unit disk is the order; for shifted
basic hypergeometric functions a closed form exists and the generic polar
grid search acts as its independent oracle.

Membership verdicts are grid-certified only: they are sound up to the grid
resolution plus one refinement cascade, not proofs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

import numpy as np

from . import _kernels
from .errors import ConvergenceError, DomainError, NearZeroDenominator
from .hypq import PhiParams, phi_eval, shifted_phi_series
from .qcore import NormalizedSeries, require_q

__all__ = [
    "GridSpec",
    "SigmaReport",
    "Membership",
    "starlike_ratio",
    "sigma_q_grid",
    "sigma_q_grid_located",
    "sigma_q_phi",
    "corollary_order",
    "in_sq_alpha",
    "in_sq_star_alpha",
    "boundary_trace",
    "classical_order_grid",
]

_NEAR_ZERO = 1e-13
_REFINE_STOP = 1e-6
_BOUNDARY_DELTAS = (1e-6, 1e-9)  # radii 1-delta used for the r = 1 extrapolation


@dataclass(frozen=True)
class GridSpec:
    """Polar evaluation grid over the disk |z| <= max_radius.

    Radii are Chebyshev-clustered toward the outer radius, where the
    extremes of the harmonic function Re w live; angles are uniform.
    """

    n_theta: int = 720
    n_radius: int = 64
    max_radius: float = 1.0 - 1e-6

    def __post_init__(self) -> None:
        if self.n_theta < 8:
            raise DomainError(f"grid needs n_theta >= 8; got {self.n_theta}")
        if self.n_radius < 2:
            raise DomainError(f"grid needs n_radius >= 2; got {self.n_radius}")
        if not 0.0 < self.max_radius < 1.0:
            raise DomainError(f"grid needs 0 < max_radius < 1; got {self.max_radius}")

    def radii(self) -> np.ndarray:
        j = np.arange(self.n_radius, dtype=np.float64)
        return self.max_radius * np.sin(0.5 * np.pi * j / (self.n_radius - 1))

    def thetas(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.n_theta, dtype=np.float64) / self.n_theta


@dataclass(frozen=True)
class SigmaReport:
    """Closed-form order with its sandwich bounds and optional grid estimate.

    ``closed_form`` and ``lower_bound`` are extended reals: -inf marks the
    degenerate boundary cases.  ``grid_estimate``/``grid_spec`` are filled
    only when a grid evaluation was requested alongside the closed form.
    """

    closed_form: float
    lower_bound: float
    upper_bound: float
    rho: float
    s: float
    grid_estimate: Optional[float] = None
    grid_spec: Optional[GridSpec] = None

    def as_dict(self) -> dict:
        out = {
            "closed_form": self.closed_form,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "rho": self.rho,
            "s": self.s,
        }
        if self.grid_estimate is not None:
            out["grid_estimate"] = self.grid_estimate
            assert self.grid_spec is not None
            out["grid_spec"] = {
                "n_theta": self.grid_spec.n_theta,
                "n_radius": self.grid_spec.n_radius,
                "max_radius": self.grid_spec.max_radius,
            }
        return out


class Membership(NamedTuple):
    """Grid-certified membership verdict with its numerical margin."""

    verdict: bool
    margin: float


def starlike_ratio(f: NormalizedSeries, z: complex, q: float) -> complex:
    """w(z) = z (D_q f)(z) / f(z); equals 1 at z = 0 for normalized f."""
    q = require_q(q)
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError(f"starlike_ratio requires |z| < 1; got |z|={abs(z)}")
    num, den = f.ratio_polys(q)
    fz_over_z = _polyval(den, z)  # f(z)/z; f vanishes iff this does for z != 0
    if z != 0 and abs(fz_over_z * z) <= _NEAR_ZERO:
        raise NearZeroDenominator(
            f"|f(z)| = {abs(fz_over_z * z)} <= {_NEAR_ZERO} at z={z}: "
            "f vanishes in the disk"
        )
    return _polyval(num, z) / fz_over_z


def _polyval(coeffs: np.ndarray, z: complex) -> complex:
    acc = 0.0 + 0.0j
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def _w_point(num: np.ndarray, den: np.ndarray, r: float, theta: float) -> float:
    z = r * complex(math.cos(theta), math.sin(theta))
    re, abs_den = _kernels.ratio_point(num, den, z)
    if abs_den <= _NEAR_ZERO:
        return math.inf
    return re


def _refine_min(
    num: np.ndarray,
    den: np.ndarray,
    r0: float,
    t0: float,
    dr: float,
    dt: float,
    max_radius: float,
) -> tuple[float, float, float]:
    """Pattern search around a grid minimizer, halving steps to 1e-6."""
    val = _w_point(num, den, r0, t0)
    for _ in range(10_000):
        if dr < _REFINE_STOP and dt < _REFINE_STOP:
            break
        candidates = (
            (min(r0 + dr, max_radius), t0),
            (max(r0 - dr, 0.0), t0),
            (r0, t0 + dt),
            (r0, t0 - dt),
        )
        best_v, best_rt = val, None
        for rr, tt in candidates:
            v = _w_point(num, den, rr, tt)
            if v < best_v:
                best_v, best_rt = v, (rr, tt)
        if best_rt is None:
            dr *= 0.5
            dt *= 0.5
        else:
            val = best_v
            r0, t0 = best_rt
    return val, r0, t0


def sigma_q_grid_located(
    f: NormalizedSeries, q: float, grid: GridSpec = GridSpec()
) -> tuple[float, float, float]:
    """Grid infimum of Re w plus the refined minimizer location (r, theta)."""
    q = require_q(q)
    num, den = f.ratio_polys(q)
    radii = grid.radii()
    thetas = grid.thetas()
    zs = (radii[:, None] * np.exp(1j * thetas)[None, :]).ravel()
    best, idx, min_den = _kernels.ratio_min_re(num, den, zs)
    if min_den <= _NEAR_ZERO:
        raise NearZeroDenominator(
            f"min |f(z)/z| = {min_den} on the grid: f vanishes inside the disk"
        )
    i, j = divmod(idx, thetas.size)
    gaps = np.diff(radii)
    dr = float(gaps[min(max(i - 1, 0), gaps.size - 1)]) if gaps.size else grid.max_radius
    dt = 2.0 * np.pi / grid.n_theta
    val, r_min, t_min = _refine_min(
        num, den, float(radii[i]), float(thetas[j]), dr, dt, grid.max_radius
    )
    return min(val, float(best)), r_min, t_min % (2.0 * np.pi)


def sigma_q_grid(f: NormalizedSeries, q: float, grid: GridSpec = GridSpec()) -> float:
    """Minimum of Re(z (D_q f)(z)/f(z)) over the polar grid plus refinement."""
    return sigma_q_grid_located(f, q, grid)[0]


def _w_closed(p: PhiParams, z: float, tol: float) -> float:
    """Closed-form w at real z: 1 + z q ((1-a)(1-b)/((1-c)(1-q))) Phi'/Phi."""
    prefactor = (1.0 - p.a) * (1.0 - p.b) / ((1.0 - p.c) * (1.0 - p.q))
    num = phi_eval(p.shifted(), z, tol)
    den = phi_eval(p, z, tol)
    if abs(den) < _NEAR_ZERO:
        raise NearZeroDenominator(f"Phi vanishes at z={z}")
    return float((1.0 + z * p.q * prefactor * num / den).real)


def sigma_q_phi(p: PhiParams, r: float, tol: float = 1e-12) -> SigmaReport:
    """Closed-form order of z Phi[a,b;c;q,rz] with its sandwich bounds.

    The sign s = q(1-a)/(a(1-q)) decides where the infimum sits: on the
    negative real axis (rho = -r) for s > 0, on the positive one (rho = r)
    for s < 0.  At r = 1 the boundary value is obtained by evaluating at
    radii 1 - 1e-6 and 1 - 1e-9 and extrapolating linearly to the boundary.

    For s < 0 the denominator series decreases from 1 to -inf along (0, 1),
    so the ratio has a pole at its zero crossing; once rho reaches that
    crossing the infimum is -inf and the report says so via the sentinel.
    The lower bound is -inf exactly when s < 0 and r = 1.
    """
    p.require_theorem_region(strict=False)
    if not 0.0 < r <= 1.0:
        raise DomainError(f"radius must lie in (0, 1]; got {r!r}")
    a, b, c, q = p.a, p.b, p.c, p.q
    if a == 0.0:
        raise DomainError("a = 0 leaves s = q(1-a)/(a(1-q)) undefined")
    if a == 1.0:
        raise DomainError(
            "a = 1 degenerates the order formula (s = 0; the function "
            "collapses toward the identity); not covered by the closed form"
        )
    s = q * (1.0 - a) / (a * (1.0 - q))
    sign = -1.0 if s > 0 else 1.0
    rho = sign * r

    def eval_at(radius: float) -> float:
        z = sign * radius
        if s < 0:
            den = phi_eval(p, z, tol)
            if den.real <= _NEAR_ZERO:
                return -math.inf  # zero of Phi crossed: pole of w inside |z| <= radius
        return _w_closed(p, z, tol)

    if r == 1.0:
        d1, d2 = _BOUNDARY_DELTAS
        v1, v2 = eval_at(1.0 - d1), eval_at(1.0 - d2)
        if math.isinf(v1) or math.isinf(v2):
            closed = -math.inf
        else:
            closed = v2 + (v2 - v1) * d2 / (d1 - d2)
    else:
        closed = eval_at(r)

    lower = -math.inf if (s < 0 and r == 1.0) else 1.0 + s * rho / (1.0 - rho)
    upper = 1.0 + rho * s * (1.0 - b) / (2.0 * (1.0 - c))
    return SigmaReport(closed_form=closed, lower_bound=lower, upper_bound=upper, rho=rho, s=s)


def sigma_q_phi_with_grid(
    p: PhiParams, r: float, grid: GridSpec = GridSpec(), tol: float = 1e-12
) -> SigmaReport:
    """Closed form plus the grid oracle on the truncated series of z Phi(rz)."""
    report = sigma_q_phi(p, r, tol=tol)
    series = shifted_phi_series(p, scale=min(r, 1.0 - 1e-9), eval_radius=grid.max_radius)
    estimate = sigma_q_grid(series, p.q, grid)
    return replace(report, grid_estimate=estimate, grid_spec=grid)


def corollary_order(p: PhiParams, r: float) -> float:
    """Order 1 - r s/(1 + r) valid under the ordering 1 > a >= b >= c >= 0.

    Cross-checked against the lower bound reported by :func:`sigma_q_phi`
    for the same inputs (the two must agree to rounding).
    """
    a, b, c = p.a, p.b, p.c
    if not (1.0 > a >= b >= c >= 0.0):
        raise DomainError(
            f"ordering violation: need 1 > a >= b >= c >= 0; got (a={a}, b={b}, c={c})"
        )
    if a == 0.0:
        raise DomainError("a = 0 leaves s undefined")
    if not 0.0 < r <= 1.0:
        raise DomainError(f"radius must lie in (0, 1]; got {r!r}")
    s = p.q * (1.0 - a) / (a * (1.0 - p.q))
    value = 1.0 - r * s / (1.0 + r)
    report = sigma_q_phi(p, r)
    if abs(value - report.lower_bound) > 1e-12 * max(1.0, abs(value)):
        raise AssertionError(
            f"corollary order {value} disagrees with reported lower bound "
            f"{report.lower_bound}"
        )
    return value


def _w_values_on_grid(
    f: NormalizedSeries, q: float, grid: GridSpec
) -> np.ndarray:
    num, den = f.ratio_polys(q)
    radii = grid.radii()
    thetas = grid.thetas()
    zs = (radii[:, None] * np.exp(1j * thetas)[None, :]).ravel()
    den_vals = _kernels.polyval_many(den, zs)
    min_den = float(np.abs(den_vals).min())
    if min_den <= _NEAR_ZERO:
        raise NearZeroDenominator(
            f"min |f(z)/z| = {min_den} on the grid: f vanishes inside the disk"
        )
    return _kernels.polyval_many(num, zs) / den_vals


def in_sq_alpha(
    f: NormalizedSeries, q: float, alpha: float, grid: GridSpec = GridSpec()
) -> Membership:
    """Grid test of Re w > alpha throughout the disk.

    margin = (grid infimum of Re w) - alpha.  Sound only up to the grid
    resolution; a true verdict is evidence, not proof.
    """
    if not 0.0 <= alpha < 1.0:
        raise DomainError(f"alpha must lie in [0, 1); got {alpha!r}")
    value = sigma_q_grid(f, q, grid)
    return Membership(value > alpha, value - alpha)


def in_sq_star_alpha(
    f: NormalizedSeries, q: float, alpha: float, grid: GridSpec = GridSpec()
) -> Membership:
    """Grid test of the disk condition |(w-alpha)/(1-alpha) - R| <= R, R = 1/(1-q).

    margin = min over the grid of R - |(w-alpha)/(1-alpha) - R|; nonnegative
    margin means every sampled w stays inside the disk.
    """
    q = require_q(q)
    if not 0.0 <= alpha < 1.0:
        raise DomainError(f"alpha must lie in [0, 1); got {alpha!r}")
    radius = 1.0 / (1.0 - q)
    w = _w_values_on_grid(f, q, grid)
    dist = np.abs((w - alpha) / (1.0 - alpha) - radius)
    margin = float(radius - dist.max())
    return Membership(margin >= 0.0, margin)


def boundary_trace(
    f: NormalizedSeries, q: float, radius: float, n_theta: int
) -> np.ndarray:
    """Rows (theta, Re w, Im w) on the circle |z| = radius, theta ascending."""
    q = require_q(q)
    if not 0.0 < radius < 1.0:
        raise DomainError(f"trace radius must lie in (0, 1); got {radius!r}")
    if n_theta < 1:
        raise DomainError(f"n_theta must be positive; got {n_theta}")
    thetas = 2.0 * np.pi * np.arange(n_theta, dtype=np.float64) / n_theta
    num, den = f.ratio_polys(q)
    zs = radius * np.exp(1j * thetas)
    den_vals = _kernels.polyval_many(den, zs)
    if float(np.abs(den_vals).min()) <= _NEAR_ZERO:
        raise NearZeroDenominator("f vanishes on the trace circle")
    w = _kernels.polyval_many(num, zs) / den_vals
    return np.column_stack([thetas, w.real, w.imag])


def classical_order_grid(
    a: float,
    b: float,
    c: float,
    scale: float,
    grid: GridSpec = GridSpec(),
    tol: float = 1e-12,
    max_terms: int = 40_000,
) -> float:
    """Grid infimum of Re(z F'(z)/F(z)) for F(z) = z 2F1(a,b;c; scale*z).

    The classical (q -> 1) companion of :func:`sigma_q_grid`, used by the
    limit regressions.
    """
    if c <= 0.0 and c == math.floor(c):
        raise DomainError(f"pole: c={c} is zero or a negative integer")
    reach = scale * grid.max_radius
    if not 0.0 < reach < 1.0:
        raise ConvergenceError(f"need scale*max_radius < 1; got {reach}")
    coeffs = [1.0]
    g = 1.0
    for n in range(max_terms):
        g *= (a + n) * (b + n) / ((c + n) * (1.0 + n)) * scale
        coeffs.append(g)
        if abs(g) * reach ** (n + 1) < tol * (1.0 - reach) and n > 20:
            break
    arr = np.asarray(coeffs, dtype=np.complex128)
    den = arr
    num = arr * np.arange(1, arr.size + 1)
    radii = grid.radii()
    thetas = grid.thetas()
    zs = (radii[:, None] * np.exp(1j * thetas)[None, :]).ravel()
    best, idx, min_den = _kernels.ratio_min_re(num, den, zs)
    if min_den <= _NEAR_ZERO:
        raise NearZeroDenominator("classical series vanishes inside the disk")
    i, j = divmod(idx, thetas.size)
    gaps = np.diff(radii)
    dr = float(gaps[min(max(i - 1, 0), gaps.size - 1)])
    val, _, _ = _refine_min(
        num, den, float(radii[i]), float(thetas[j]), dr, 2.0 * np.pi / grid.n_theta,
        grid.max_radius,
    )
    return min(val, float(best))
