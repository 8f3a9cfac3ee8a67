"""Heine's basic hypergeometric series and the classical Gaussian 2F1.

Evaluation strategy for Phi[a,b;c;q,z] = sum_n C_n z^n with
C_n = (a;q)_n (b;q)_n / ((c;q)_n (q;q)_n):

* ``|z| <= 0.9`` -- direct summation.  Term ratios of the series tend to
  |z|, so a ceiling on the observed ratios (valid once the q^n corrections
  have settled) yields a geometric tail estimate; summation stops when that
  estimate drops below tol * |partial sum|.
* ``0.9 < |z| < 1`` -- tail-split summation.  The coefficients C_n converge
  geometrically (at rate q) to a limit C_inf, so
  Phi(z) = C_inf / (1 - z) + sum_n (C_n - C_inf) z^n, where the remaining
  series converges at rate q|z| <= q regardless of how close |z| is to 1.
  Direct summation would need ~1/(1-|z|) terms there and is useless for the
  boundary evaluations this package performs at |z| = 1 - 1e-9.

Evaluations at |z| >= 1 are rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, ConvergenceError, DomainError, NearZeroDenominator
from .qcore import NormalizedSeries, q_pochhammer, require_q

__all__ = [
    "PhiParams",
    "phi_coefficient",
    "phi_limit_coefficient",
    "phi_eval",
    "phi_ratio_shifted",
    "gauss_2f1",
    "shifted_phi_series",
]

_DIRECT_RADIUS = 0.9  # crossover |z| between direct and tail-split summation
_RATIO_CROSSOVER = 1e-4  # below this |z| the contiguous-relation path is skipped
_MAX_TERMS = 2_000_000
_NEAR_ZERO = 1e-13


@dataclass(frozen=True)
class PhiParams:
    """Parameter triple (a, b, c) plus q for a basic hypergeometric series.

    Construction enforces only what makes the series well defined:
    0 < q < 1, nonnegative real a, b, c, and (c;q)_n != 0 for every n
    (which needs c < 1/q and c != 1).  The stronger constraints required
    by the closed-form order of starlikeness are checked separately by
    :meth:`theorem_valid` / :meth:`require_theorem_region`.
    """

    a: float
    b: float
    c: float
    q: float

    def __post_init__(self) -> None:
        q = require_q(self.q)
        object.__setattr__(self, "q", q)
        for name in ("a", "b", "c"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0.0:
                raise DomainError(f"parameter {name} must be a nonnegative real; got {value!r}")
            object.__setattr__(self, name, value)
        if self.c >= 1.0 / q or self.c == 1.0:
            raise DomainError(
                f"c={self.c!r} makes (c;q)_n vanish: need c < 1/q and c != 1"
            )

    def theorem_valid(self, strict: bool = True) -> bool:
        """Validity region of the closed-form order.

        strict=True is the stated region c < a < 1/q, c < b < 1.  The
        relaxed form (strict=False) admits the closure c <= a, c <= b,
        which the classical-limit checks with coinciding parameters need.
        """
        a, b, c, q = self.a, self.b, self.c, self.q
        if strict:
            return c < a < 1.0 / q and c < b < 1.0
        return c <= a < 1.0 / q and c <= b < 1.0

    def require_theorem_region(self, strict: bool = True) -> None:
        if not self.theorem_valid(strict=strict):
            rel = "<" if strict else "<="
            raise DomainError(
                f"parameters violate the order-theorem region c {rel} a < 1/q, "
                f"c {rel} b < 1: (a={self.a}, b={self.b}, c={self.c}, q={self.q})"
            )

    def shifted(self) -> "PhiParams":
        """Parameters (aq, bq, cq) of the q-shifted companion series."""
        return PhiParams(self.a * self.q, self.b * self.q, self.c * self.q, self.q)


def phi_coefficient(p: PhiParams, n: int) -> float:
    """Series coefficient (a;q)_n (b;q)_n / ((c;q)_n (q;q)_n)."""
    if n < 0:
        raise DomainError(f"coefficient index must be >= 0; got {n}")
    num = q_pochhammer(p.a, p.q, n) * q_pochhammer(p.b, p.q, n)
    den = q_pochhammer(p.c, p.q, n) * q_pochhammer(p.q, p.q, n)
    return num / den


def _coefficients(p: PhiParams, n_terms: int) -> np.ndarray:
    """First n_terms coefficients via the term-ratio recurrence (vectorized)."""
    if n_terms <= 0:
        return np.empty(0)
    a, b, c, q = p.a, p.b, p.c, p.q
    qn = q ** np.arange(n_terms - 1, dtype=np.float64)
    ratios = (1.0 - a * qn) * (1.0 - b * qn) / ((1.0 - c * qn) * (1.0 - q * qn))
    out = np.empty(n_terms)
    out[0] = 1.0
    np.cumprod(ratios, out=out[1:])
    return out


def phi_limit_coefficient(p: PhiParams, rtol: float = 1e-17) -> float:
    """Limit C_inf of the series coefficients, equal to
    (a;q)_inf (b;q)_inf / ((c;q)_inf (q;q)_inf).

    Computed as the interleaved ratio product (the coefficient recurrence run
    to convergence), which stays well scaled even when the four individual
    infinite products underflow for q near 1.
    """
    scale = 2.0 + p.a + p.b + p.c
    n_star = int(math.log(rtol / scale) / math.log(p.q)) + 2
    if n_star > _MAX_TERMS:
        raise ConvergenceError(
            f"coefficient limit needs ~{n_star} iterations at q={p.q}; too close to 1"
        )
    return float(_coefficients(p, n_star)[-1])


def _ratio_ceiling(p: PhiParams, x: float) -> float:
    """Upper bound on |coefficient ratio| for every index k with q^k <= x.

    The ratio factors pair as (1-a y)/(1-c y) and (1-b y)/(1-q y); each
    quotient of a |linear| over a positive decreasing linear attains its
    supremum over y in [0, x] at an endpoint, giving
    max(1, |1-a x| / (1-c x)) per pair.  Tight as x -> 0 and, unlike a
    denominator-only bound, it survives parameters clustered near 1.
    """
    a, b, c, q = p.a, p.b, p.c, p.q
    first = max(1.0, abs(1.0 - a * x) / (1.0 - c * x))
    second = max(1.0, abs(1.0 - b * x) / (1.0 - q * x))
    return first * second


def _phi_direct(p: PhiParams, z: complex, tol: float) -> complex:
    term = 1.0 + 0.0j
    total = term
    a, b, c, q = p.a, p.b, p.c, p.q
    abs_z = abs(z)
    qn = 1.0
    for n in range(1, _MAX_TERMS):
        term = term * z * ((1.0 - a * qn) * (1.0 - b * qn) / ((1.0 - c * qn) * (1.0 - q * qn)))
        qn *= q  # q^n from here on
        total += term
        if term == 0.0:
            break
        if n >= 20:
            ceiling = abs_z * _ratio_ceiling(p, qn)
            if ceiling < 1.0:
                tail = abs(term) * ceiling / (1.0 - ceiling)
                if tail <= tol * abs(total):
                    break
    else:
        raise ConvergenceError(f"series did not meet tol={tol} within {_MAX_TERMS} terms")
    return total


def _phi_split(p: PhiParams, z: complex, tol: float) -> complex:
    c_inf = phi_limit_coefficient(p)
    scale = 2.0 + p.a + p.b + p.c
    n_star = int(math.log(1e-17 / scale) / math.log(p.q)) + 2
    dev = _coefficients(p, n_star) - c_inf
    zpow = z ** np.arange(n_star)
    return complex(c_inf / (1.0 - z) + np.dot(dev, zpow))


def phi_eval(p: PhiParams, z: complex, tol: float = 1e-12) -> complex:
    """Evaluate Phi[a,b;c;q,z] to relative accuracy ~tol for |z| < 1."""
    if tol <= 0.0:
        raise DomainError(f"tolerance must be positive; got {tol!r}")
    z = complex(z)
    if abs(z) >= 1.0:
        raise ConvergenceError(f"series evaluation requires |z| < 1; got |z|={abs(z)}")
    if z == 0:
        return 1.0 + 0.0j
    if abs(z) <= _DIRECT_RADIUS:
        return _phi_direct(p, z, tol)
    return _phi_split(p, z, tol)


def phi_ratio_shifted(p: PhiParams, z: complex, tol: float = 1e-13) -> complex:
    """Ratio Phi[aq,bq;cq;q,z] / Phi[a,b;c;q,z], cross-validated two ways.

    Path (i) is the direct quotient of two series evaluations.  Path (ii)
    rewrites the numerator through the contiguous relation

        Phi[aq,bq;cq;q,z] = ((1-c)/(a(1-b)z)) (Phi[aq,b;c;q,z] - Phi[a,b;c;q,z])

    and the two must agree to 1e-8 relative.  Near z = 0 path (ii) loses its
    significant digits to cancellation, so below |z| = 1e-4 the series limit
    is used instead (both series start at 1, so the ratio tends to 1) and no
    cross-check runs.  Returns path (i).
    """
    p.require_theorem_region(strict=False)
    z = complex(z)
    if abs(z) >= 1.0:
        raise ConvergenceError(f"ratio evaluation requires |z| < 1; got |z|={abs(z)}")
    if z == 0:
        return 1.0 + 0.0j
    den = phi_eval(p, z, tol)
    if abs(den) < _NEAR_ZERO:
        raise NearZeroDenominator(f"|Phi[a,b;c;q,{z}]| = {abs(den)} < {_NEAR_ZERO}")
    direct = phi_eval(p.shifted(), z, tol) / den
    if abs(z) >= _RATIO_CROSSOVER:
        upshift_a = PhiParams(p.a * p.q, p.b, p.c, p.q)
        bracket = phi_eval(upshift_a, z, tol) / den - 1.0
        contiguous = (1.0 - p.c) / (p.a * (1.0 - p.b) * z) * bracket
        if abs(direct - contiguous) > 1e-8 * max(abs(direct), 1e-30):
            raise ConsistencyError(
                f"contiguous-relation cross-check failed at z={z}: "
                f"direct={direct}, contiguous={contiguous}"
            )
    return direct


def gauss_2f1(a: float, b: float, c: float, z: complex, tol: float = 1e-12) -> complex:
    """Classical Gaussian series sum_n (a)_n (b)_n / ((c)_n (1)_n) z^n.

    Same truncation policy as :func:`phi_eval`'s direct path.  c must not be
    zero or a negative integer; |z| must be below 1 (no continuation).
    """
    if tol <= 0.0:
        raise DomainError(f"tolerance must be positive; got {tol!r}")
    if c <= 0.0 and c == math.floor(c):
        raise DomainError(f"gauss_2f1 pole: c={c} is zero or a negative integer")
    z = complex(z)
    if abs(z) >= 1.0:
        raise ConvergenceError(f"series evaluation requires |z| < 1; got |z|={abs(z)}")
    if z == 0:
        return 1.0 + 0.0j
    # for k >= n the coefficient ratio is bounded by 1 + kappa/k
    kappa = max(0.0, a + b - c - 1.0) + max(0.0, abs(a * b - c))
    term = 1.0 + 0.0j
    total = term
    for n in range(_MAX_TERMS):
        term = term * z * ((a + n) * (b + n) / ((c + n) * (1.0 + n)))
        total += term
        if term == 0.0:
            break
        if n >= 20:
            ceiling = abs(z) * (1.0 + kappa / (n + 1))
            if ceiling < 1.0:
                tail = abs(term) * ceiling / (1.0 - ceiling)
                if tail <= tol * abs(total):
                    break
    else:
        raise ConvergenceError(f"series did not meet tol={tol} within {_MAX_TERMS} terms")
    return total


def shifted_phi_series(
    p: PhiParams,
    scale: float = 1.0,
    eval_radius: float = 1.0,
    tol: float = 1e-12,
    max_terms: int = 40_000,
) -> NormalizedSeries:
    """Truncated coefficient vector of f(z) = z * Phi[a,b;c;q, scale*z].

    The truncation length is chosen so the neglected tail at
    |z| = eval_radius stays below ~tol; this needs scale * eval_radius < 1.
    """
    if not 0.0 < scale <= 1.0:
        raise DomainError(f"scale must lie in (0, 1]; got {scale!r}")
    reach = scale * eval_radius
    if not 0.0 < reach < 1.0:
        raise ConvergenceError(
            f"series truncation requires scale*eval_radius < 1; got {reach}"
        )
    # coefficients of f are C_n scale^n; the C_n approach C_inf geometrically
    c_inf = phi_limit_coefficient(p)
    bound = max(abs(c_inf), 1.0) * 4.0
    n_terms = int(math.log(tol * (1.0 - reach) / bound) / math.log(reach)) + 2
    n_terms = max(8, n_terms)
    if n_terms > max_terms:
        raise ConvergenceError(
            f"series needs {n_terms} terms at radius {reach}; cap is {max_terms}"
        )
    coeffs = _coefficients(p, n_terms) * scale ** np.arange(n_terms, dtype=np.float64)
    return NormalizedSeries(coeffs.astype(np.complex128))
