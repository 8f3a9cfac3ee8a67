"""Coefficient machinery: recurrences, sharp bounds, and extremal searches.

A normalized series f with w = z(D_q f)/f of positive real part has
coefficients driven by the Carathéodory coefficients p_n of w through

    ([n]_q - 1) a_n = sum_{k=1}^{n-1} p_{n-k} a_k,      a_1 = 1.

Everything here works with that recurrence: the growth bound and its
extremal kernel F (w = (1+z)/(1-z)), the |a3 - mu a2^2| functional and its
second extremal kernel G (w = (1+z^2)/(1-z^2)), the second Hankel
determinant a2 a4 - a3^2, the (p1, x, zc) parametrization of the first
three Carathéodory coefficients, and brute-force maximizations over that
parametrization acting as independent oracles for the closed-form bounds.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import DomainError
from .qcore import NormalizedSeries, q_bracket, require_q

__all__ = [
    "CaratheodoryTriple",
    "CaratheodoryMixture",
    "BoundCertificate",
    "certificate",
    "BruteForceGrid",
    "coeffs_from_p",
    "a234_from_p",
    "bieberbach_bound",
    "extremal_F_coeffs",
    "extremal_G_coeffs",
    "fekete_szego_bound",
    "FeketeSzegoBound",
    "hankel2_bound",
    "hankel_domain_max",
    "functional_fs",
    "functional_h22",
    "p123_from_triple",
    "triple_from_p123",
    "p2_functional_bound",
    "p2_functional_check",
    "hankel_brute_force",
    "fs_brute_force",
    "SearchResult",
    "log_strip_p_coeffs",
]


@dataclass(frozen=True)
class CaratheodoryTriple:
    """Free parameters (p1, x, zc) generating the first three coefficients
    of a positive-real-part function: p1 in [0, 2] real, |x| <= 1, |zc| <= 1.
    """

    p1: float
    x: complex
    zc: complex

    def __post_init__(self) -> None:
        if not 0.0 <= self.p1 <= 2.0 + 1e-12:
            raise DomainError(f"p1 must lie in [0, 2]; got {self.p1!r}")
        if abs(self.x) > 1.0 + 1e-12:
            raise DomainError(f"|x| must be <= 1; got {abs(self.x)}")
        if abs(self.zc) > 1.0 + 1e-12:
            raise DomainError(f"|zc| must be <= 1; got {abs(self.zc)}")
        object.__setattr__(self, "p1", float(self.p1))
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "zc", complex(self.zc))


@dataclass(frozen=True)
class CaratheodoryMixture:
    """Convex mixture p(z) = sum_k w_k (1 + e_k z)/(1 - e_k z) of half-plane
    kernels: nonnegative weights summing to 1, unimodular phases e_k.

    Coefficients are p_n = 2 sum_k w_k e_k^n, hence |p_n| <= 2.
    """

    weights: np.ndarray = field(repr=False)
    phases: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=np.float64).copy()
        e = np.asarray(self.phases, dtype=np.complex128).copy()
        if w.ndim != 1 or e.shape != w.shape or w.size == 0:
            raise DomainError("weights and phases must be equal-length 1-d arrays")
        if np.any(w < 0.0) or abs(float(w.sum()) - 1.0) > 1e-12:
            raise DomainError("weights must be nonnegative and sum to 1")
        if np.any(np.abs(np.abs(e) - 1.0) > 1e-12):
            raise DomainError("phases must be unimodular")
        w.setflags(write=False)
        e.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "phases", e)

    def p_coeffs(self, n_max: int) -> np.ndarray:
        """Coefficients p_1..p_{n_max}."""
        n = np.arange(1, n_max + 1)
        return 2.0 * (self.phases[None, :] ** n[:, None] @ self.weights)

    def series(self, q: float, n_terms: int) -> NormalizedSeries:
        """Normalized series driven by this mixture's coefficients."""
        return coeffs_from_p(self.p_coeffs(max(n_terms - 1, 0)), q, n_terms)

    @staticmethod
    def random(rng: np.random.Generator, max_atoms: int = 8) -> "CaratheodoryMixture":
        n = int(rng.integers(1, max_atoms + 1))
        w = rng.random(n) + 1e-9
        w /= w.sum()
        phases = np.exp(2j * np.pi * rng.random(n))
        return CaratheodoryMixture(w, phases)


@dataclass(frozen=True)
class BoundCertificate:
    """Machine-checkable record of one inequality check.

    verdict is "pass" iff margin = rhs - lhs >= -tolerance, with the
    tolerance recorded in params.
    """

    theorem_id: str
    params: dict
    lhs: float
    rhs: float
    margin: float
    verdict: str

    def as_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "verdict": self.verdict,
        }


def certificate(
    theorem_id: str, params: dict, lhs: float, rhs: float, tolerance: float
) -> BoundCertificate:
    lhs = float(lhs)
    rhs = float(rhs)
    margin = rhs - lhs
    verdict = "pass" if margin >= -tolerance else "fail"
    return BoundCertificate(
        theorem_id=theorem_id,
        params={**params, "tolerance": tolerance},
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        verdict=verdict,
    )


def coeffs_from_p(p_coeffs, q: float, n_terms: int) -> NormalizedSeries:
    """Forward-substitute ([n]_q - 1) a_n = sum_{k<n} p_{n-k} a_k, a_1 = 1."""
    q = require_q(q)
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1; got {n_terms}")
    p = np.asarray(p_coeffs, dtype=np.complex128)
    if p.size < n_terms - 1:
        raise DomainError(
            f"need at least {n_terms - 1} driving coefficients; got {p.size}"
        )
    a = np.empty(n_terms, dtype=np.complex128)
    a[0] = 1.0
    for n in range(2, n_terms + 1):
        rhs = np.dot(a[: n - 1], p[n - 2 :: -1])
        a[n - 1] = rhs / (q * q_bracket(n - 1, q))  # [n]_q - 1 = q [n-1]_q
    return NormalizedSeries(a)


def a234_from_p(p1: complex, p2: complex, p3: complex, q: float) -> tuple[complex, complex, complex]:
    """Closed forms of a2, a3, a4 induced by (p1, p2, p3)."""
    q = require_q(q)
    a2 = p1 / q
    a3 = (q * p2 + p1 * p1) / (q * q * (1.0 + q))
    a4 = (p3 * q * q * (1.0 + q) + p1 * p2 * q * (2.0 + q) + p1**3) / (
        q**3 * (1.0 + q) * (1.0 + q + q * q)
    )
    return complex(a2), complex(a3), complex(a4)


def bieberbach_bound(q: float, n: int) -> float:
    """Sharp growth bound prod_{j=2}^{n} ([j-1]_q + 1) / ([j]_q - 1) on |a_n|.

    Telescopes to the classical bound n as q -> 1.
    """
    q = require_q(q)
    if n < 2:
        raise DomainError(f"bound defined for n >= 2; got {n}")
    out = 1.0
    for j in range(2, n + 1):
        out *= (q_bracket(j - 1, q) + 1.0) / (q_bracket(j, q) - 1.0)
    return out


def extremal_F_coeffs(q: float, n_terms: int) -> NormalizedSeries:
    """Coefficients of the kernel solution F with z(D_q F)/F = (1+z)/(1-z).

    Satisfies ([n]_q - 1) b_n = 2 sum_{k<n} b_k; b_n equals
    :func:`bieberbach_bound`.  Note the b_n grow geometrically at rate
    (2-q)/q, so the series converges only for |z| < q/(2-q).
    """
    q = require_q(q)
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1; got {n_terms}")
    b = np.empty(n_terms, dtype=np.complex128)
    b[0] = 1.0
    running = 1.0 + 0.0j
    for n in range(2, n_terms + 1):
        b[n - 1] = 2.0 * running / (q * q_bracket(n - 1, q))
        running += b[n - 1]
    return NormalizedSeries(b)


def extremal_G_coeffs(q: float, n_terms: int) -> NormalizedSeries:
    """Coefficients of the kernel solution G with z(D_q G)/G = (1+z^2)/(1-z^2).

    Driven by p = (0, 2, 0, 2, ...); only odd-index coefficients survive.
    Converges for |z| < sqrt(q/(2-q)).
    """
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1; got {n_terms}")
    p = np.zeros(max(n_terms - 1, 0), dtype=np.complex128)
    p[1::2] = 2.0
    return coeffs_from_p(p, q, n_terms)


class FeketeSzegoBound(NamedTuple):
    """Bound value plus the active extremal branch ('F' or 'G')."""

    value: float
    branch: str


def fekete_szego_bound(q: float, mu: complex) -> FeketeSzegoBound:
    """Sharp bound max{|2(2+q) - 4 mu (1+q)| / (q^2 (1+q)), 2/(q(1+q))} on
    |a3 - mu a2^2| for any complex weight mu.

    The first branch is attained by the half-plane kernel F, the second by
    the half-plane-in-z^2 kernel G (ties report 'F').
    """
    q = require_q(q)
    first = abs(2.0 * (2.0 + q) - 4.0 * mu * (1.0 + q)) / (q * q * (1.0 + q))
    second = 2.0 / (q * (1.0 + q))
    if first >= second:
        return FeketeSzegoBound(float(first), "F")
    return FeketeSzegoBound(float(second), "G")


def hankel2_bound(q: float) -> float:
    """Stated sharp bound 4 / (q^2 (1+q)^2) on |a2 a4 - a3^2|; the G kernel
    attains it exactly.  Tends to the classical value 1 as q -> 1.
    """
    q = require_q(q)
    return 4.0 / (q * q * (1.0 + q) ** 2)


def hankel_domain_max(q: float) -> float:
    """Actual maximum 4(2+q) / (q^2 (1+q)^2 (1+q+q^2)) of |a2 a4 - a3^2|
    over the full (p1, x, zc) parametrization, attained at p1 = 2 (the F
    point, where x and zc drop out).

    This exceeds :func:`hankel2_bound` by the factor (2+q)/(1+q+q^2) > 1
    for every q in (0, 1); the two coincide only in the limit q -> 1.  The
    brute-force search is validated against this value.
    """
    q = require_q(q)
    return 4.0 * (2.0 + q) / (q * q * (1.0 + q) ** 2 * (1.0 + q + q * q))


def functional_fs(a2: complex, a3: complex, mu: complex) -> float:
    """|a3 - mu a2^2|."""
    return abs(a3 - mu * a2 * a2)


def functional_h22(a2: complex, a3: complex, a4: complex) -> float:
    """|a2 a4 - a3^2| (second Hankel determinant at offset 2)."""
    return abs(a2 * a4 - a3 * a3)


def p123_from_triple(t: CaratheodoryTriple) -> tuple[complex, complex, complex]:
    """Coefficients (p1, p2, p3) generated by a parameter triple:

    2 p2 = p1^2 + x (4 - p1^2)
    4 p3 = p1^3 + 2(4-p1^2) p1 x - p1 (4-p1^2) x^2 + 2 (4-p1^2)(1-|x|^2) zc
    """
    p1, x, zc = t.p1, t.x, t.zc
    gap = 4.0 - p1 * p1
    p2 = 0.5 * (p1 * p1 + x * gap)
    p3 = 0.25 * (
        p1**3 + 2.0 * gap * p1 * x - p1 * gap * x * x
        + 2.0 * gap * (1.0 - abs(x) ** 2) * zc
    )
    return complex(p1), complex(p2), complex(p3)


def triple_from_p123(
    p1: complex, p2: complex, p3: complex, tol: float = 1e-9
) -> tuple[CaratheodoryTriple, complex]:
    """Recover a parameter triple reproducing (p1, p2, p3) up to rotation.

    Coefficients of actual positive-real-part functions may have complex p1;
    the triple normalizes p1 to [0, 2] by the rotation p(z) -> p(eta z), so
    the returned triple reproduces (p1 eta, p2 eta^2, p3 eta^3).  Returns
    (triple, eta).  Raises DomainError when no admissible (x, zc) exists
    within tolerance, i.e. the coefficients are not of Carathéodory type.
    """
    p1 = complex(p1)
    eta = p1.conjugate() / abs(p1) if p1 != 0 else 1.0 + 0.0j
    q1 = (p1 * eta).real
    q2 = complex(p2) * eta * eta
    q3 = complex(p3) * eta**3
    if q1 > 2.0 + tol:
        raise DomainError(f"|p1| = {q1} exceeds 2: not a Carathéodory coefficient")
    q1 = min(q1, 2.0)
    gap = 4.0 - q1 * q1
    if gap <= tol:
        # single-atom case: everything is forced to p_n = 2 (after rotation)
        if abs(q2 - 2.0) > 10 * tol or abs(q3 - 2.0) > 10 * tol:
            raise DomainError("p1 = 2 forces p2 = p3 = 2; residual too large")
        return CaratheodoryTriple(2.0, 0.0, 0.0), eta
    x = (2.0 * q2 - q1 * q1) / gap
    if abs(x) > 1.0 + tol:
        raise DomainError(f"recovered |x| = {abs(x)} exceeds 1")
    x = x / abs(x) if abs(x) > 1.0 else x
    denom = 2.0 * gap * (1.0 - abs(x) ** 2)
    residual = 4.0 * q3 - q1**3 - 2.0 * gap * q1 * x + q1 * gap * x * x
    if abs(denom) <= tol:
        if abs(residual) > 50 * tol:
            raise DomainError(
                f"|x| = 1 leaves no zc freedom but the residual is {abs(residual)}"
            )
        zc = 0.0 + 0.0j
    else:
        zc = residual / denom
        if abs(zc) > 1.0 + tol:
            raise DomainError(f"recovered |zc| = {abs(zc)} exceeds 1")
        if abs(zc) > 1.0:
            zc = zc / abs(zc)
    return CaratheodoryTriple(q1, x, zc), eta


def p2_functional_bound(lam: complex) -> float:
    """Sharp bound 2 max{1, |2 lambda - 1|} on |p2 - lambda p1^2| over the
    Carathéodory class (stated for real lambda; holds verbatim for complex).
    """
    return 2.0 * max(1.0, abs(2.0 * lam - 1.0))


def p2_functional_check(
    p1: complex, p2: complex, lam: complex, tolerance: float = 1e-9
) -> BoundCertificate:
    """Certificate for |p2 - lambda p1^2| <= 2 max{1, |2 lambda - 1|}."""
    lhs = abs(p2 - lam * p1 * p1)
    rhs = p2_functional_bound(lam)
    return certificate(
        "p2-functional",
        {"lambda": _param_value(lam), "p1": _param_value(p1), "p2": _param_value(p2)},
        lhs,
        rhs,
        tolerance,
    )


def _param_value(v):
    v = complex(v)
    if v.imag == 0.0:
        return v.real
    return [v.real, v.imag]


@dataclass(frozen=True)
class BruteForceGrid:
    """Resolution of the (p1, |x|, arg x, arg zc) search grid."""

    n_p1: int = 33
    n_rho: int = 25
    n_theta_x: int = 32
    n_theta_z: int = 16
    refine: bool = True

    def __post_init__(self) -> None:
        for name in ("n_p1", "n_rho", "n_theta_x", "n_theta_z"):
            if getattr(self, name) < 1:
                raise DomainError(f"{name} must be >= 1")

    def axes(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        p1s = np.linspace(0.0, 2.0, self.n_p1)
        rhos = np.linspace(0.0, 1.0, self.n_rho)
        thxs = 2.0 * np.pi * np.arange(self.n_theta_x) / self.n_theta_x
        thzs = 2.0 * np.pi * np.arange(self.n_theta_z) / self.n_theta_z
        return p1s, rhos, thxs, thzs


class SearchResult(NamedTuple):
    """Brute-force maximum with the (refined) maximizing triple."""

    value: float
    argmax: CaratheodoryTriple


def _h22_point(q: float, p1: float, rho: float, thx: float, thz: float) -> float:
    t = CaratheodoryTriple(
        min(max(p1, 0.0), 2.0),
        min(max(rho, 0.0), 1.0) * complex(math.cos(thx), math.sin(thx)),
        complex(math.cos(thz), math.sin(thz)),
    )
    return functional_h22(*a234_from_p(*p123_from_triple(t), q))


def _fs_point(q: float, mu: complex, p1: float, rho: float, thx: float) -> float:
    t = CaratheodoryTriple(
        min(max(p1, 0.0), 2.0),
        min(max(rho, 0.0), 1.0) * complex(math.cos(thx), math.sin(thx)),
        0.0,
    )
    p1_, p2_, _ = p123_from_triple(t)
    a2, a3, _ = a234_from_p(p1_, p2_, 0.0, q)
    return functional_fs(a2, a3, mu)


def _pattern_search_max(fn, point: list[float], steps: list[float], clamps) -> list[float]:
    """Coordinate pattern search (strict ascent, step halving to 1e-6)."""
    value = fn(*point)
    for _ in range(10_000):
        if max(steps) < 1e-6:
            break
        best_v, best_pt = value, None
        for axis, step in enumerate(steps):
            for direction in (+1.0, -1.0):
                cand = list(point)
                cand[axis] += direction * step
                lo, hi = clamps[axis]
                cand[axis] = min(max(cand[axis], lo), hi)
                v = fn(*cand)
                if v > best_v:
                    best_v, best_pt = v, cand
        if best_pt is None:
            steps[:] = [s * 0.5 for s in steps]
        else:
            value, point = best_v, best_pt
    return [value, *point]


def hankel_brute_force(
    q: float, resolution: BruteForceGrid = BruteForceGrid()
) -> SearchResult:
    """Grid + refinement maximization of |a2 a4 - a3^2| over the triple domain.

    zc is searched on the unit circle only: it enters p3 linearly with a
    nonnegative real multiplier 2(4-p1^2)(1-|x|^2), so the modulus maximum
    sits on |zc| = 1; an interior spot check at 10x coarser resolution
    guards that assumption.  Ties break to the lexicographically first grid
    point, so results are deterministic.
    """
    q = require_q(q)
    p1s, rhos, thxs, thzs = resolution.axes()
    best, (i, j, k, l) = _kernels.hankel_grid_max(q, p1s, rhos, thxs, thzs)
    point = [float(p1s[i]), float(rhos[j]), float(thxs[k]), float(thzs[l])]
    value = float(best)
    if resolution.refine:
        steps = [
            2.0 / max(resolution.n_p1 - 1, 1),
            1.0 / max(resolution.n_rho - 1, 1),
            2.0 * np.pi / resolution.n_theta_x,
            2.0 * np.pi / resolution.n_theta_z,
        ]
        clamps = [(0.0, 2.0), (0.0, 1.0), (-np.inf, np.inf), (-np.inf, np.inf)]
        refined = _pattern_search_max(
            lambda *pt: _h22_point(q, *pt), list(point), list(steps), clamps
        )
        value, moved = refined[0], refined[1:]
        for axis, (before, after) in enumerate(zip(point, moved)):
            if abs(after - before) > steps[axis] * (1.0 + 1e-9):
                warnings.warn(
                    "hankel_brute_force: refinement moved the optimum by more "
                    "than one coarse cell; resolution may be too coarse",
                    stacklevel=2,
                )
                break
        point = moved
    _interior_zc_spot_check(q, value)
    triple = CaratheodoryTriple(
        point[0],
        point[1] * complex(math.cos(point[2]), math.sin(point[2])),
        complex(math.cos(point[3]), math.sin(point[3])),
    )
    return SearchResult(value, triple)


def _interior_zc_spot_check(q: float, boundary_max: float) -> None:
    p1 = np.linspace(0.0, 2.0, 5)[:, None, None, None, None]
    rho = np.linspace(0.0, 1.0, 5)[None, :, None, None, None]
    thx = (2.0 * np.pi * np.arange(4) / 4)[None, None, :, None, None]
    rz = np.array([0.25, 0.5, 0.75])[None, None, None, :, None]
    thz = (2.0 * np.pi * np.arange(4) / 4)[None, None, None, None, :]
    x = rho * np.exp(1j * thx)
    zc = rz * np.exp(1j * thz)
    gap = 4.0 - p1 * p1
    p2 = 0.5 * (p1 * p1 + x * gap)
    p3 = 0.25 * (p1**3 + 2 * gap * p1 * x - p1 * gap * x * x + 2 * gap * (1 - rho**2) * zc)
    a2 = p1 / q
    a3 = (q * p2 + p1 * p1) / (q * q * (1 + q))
    a4 = (p3 * q * q * (1 + q) + p1 * p2 * q * (2 + q) + p1**3) / (
        q**3 * (1 + q) * (1 + q + q * q)
    )
    interior = float(np.abs(a2 * a4 - a3 * a3).max())
    if interior > boundary_max + 1e-9:
        warnings.warn(
            "hankel_brute_force: interior-|zc| spot check exceeded the "
            "boundary maximum; the |zc| = 1 restriction looks unsafe here",
            stacklevel=3,
        )


def fs_brute_force(
    q: float, mu: complex, resolution: BruteForceGrid = BruteForceGrid()
) -> SearchResult:
    """Grid + refinement maximization of |a3 - mu a2^2| over the (p1, x) slice.

    zc never enters the functional, so the returned triple carries zc = 1.
    """
    q = require_q(q)
    mu = complex(mu)
    p1s, rhos, thxs, _ = resolution.axes()
    best, (i, j, k) = _kernels.fs_grid_max(q, mu, p1s, rhos, thxs)
    point = [float(p1s[i]), float(rhos[j]), float(thxs[k])]
    value = float(best)
    if resolution.refine:
        steps = [
            2.0 / max(resolution.n_p1 - 1, 1),
            1.0 / max(resolution.n_rho - 1, 1),
            2.0 * np.pi / resolution.n_theta_x,
        ]
        clamps = [(0.0, 2.0), (0.0, 1.0), (-np.inf, np.inf)]
        refined = _pattern_search_max(
            lambda *pt: _fs_point(q, mu, *pt), list(point), list(steps), clamps
        )
        value, moved = refined[0], refined[1:]
        for axis, (before, after) in enumerate(zip(point, moved)):
            if abs(after - before) > steps[axis] * (1.0 + 1e-9):
                warnings.warn(
                    "fs_brute_force: refinement moved the optimum by more than "
                    "one coarse cell; resolution may be too coarse",
                    stacklevel=2,
                )
                break
        point = moved
    triple = CaratheodoryTriple(
        point[0],
        point[1] * complex(math.cos(point[2]), math.sin(point[2])),
        1.0,
    )
    return SearchResult(value, triple)


def log_strip_p_coeffs(n_terms: int, strength: float = 1.9) -> np.ndarray:
    """Driving coefficients of the log-strip kernel
    p(z) = 1 - (i strength / pi) log((1+z)/(1-z)):
    p_n = -2 i strength / (pi n) for odd n, 0 for even n.

    Its real part stays inside (1 - strength/2, 1 + strength/2) -- positive
    for strength < 2 -- while the imaginary part is unbounded, so the induced
    series has w escaping every fixed disk but never leaving the half plane.
    The induced series stays analytic in the unit disk provided
    strength < min(2, 2q/(1-q)); with the default 1.9 that means q >= 0.4875.
    """
    if n_terms < 0:
        raise DomainError(f"n_terms must be >= 0; got {n_terms}")
    if not 0.0 < strength < 2.0:
        raise DomainError(f"strength must lie in (0, 2); got {strength!r}")
    p = np.zeros(n_terms, dtype=np.complex128)
    n = np.arange(1, n_terms + 1)
    odd = n % 2 == 1
    p[odd] = -2j * strength / (np.pi * n[odd])
    return p
