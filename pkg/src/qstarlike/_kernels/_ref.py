"""NumPy reference implementations of the hot kernels.

These mirror the compiled extension in `_core.pyx` exactly (same reduction
order, same first-hit tie-breaking) and serve as the fallback backend when
the extension is unavailable.
"""

from __future__ import annotations

import numpy as np

__all__ = ["polyval_many", "ratio_eval", "ratio_min_re", "hankel_grid_max", "fs_grid_max"]


def polyval_many(coeffs: np.ndarray, zs: np.ndarray) -> np.ndarray:
    """Evaluate a polynomial (ascending coefficients) at each point by Horner."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    zs = np.ascontiguousarray(zs, dtype=np.complex128)
    acc = np.full(zs.shape, coeffs[-1])
    for k in range(coeffs.size - 2, -1, -1):
        acc *= zs
        acc += coeffs[k]
    return acc


def ratio_eval(num: np.ndarray, den: np.ndarray, zs: np.ndarray) -> np.ndarray:
    """Evaluate num(z)/den(z) (coefficients in ascending order) at each z."""
    return polyval_many(num, zs) / polyval_many(den, zs)


def ratio_point(num: np.ndarray, den: np.ndarray, z: complex) -> tuple[float, float]:
    """Re(num(z)/den(z)) and |den(z)| at a single point (refinement step).

    Scalar Horner over builtin complex: per-element NumPy dispatch would cost
    ~50x more here, and this path runs hundreds of times per refinement.
    """
    z = complex(z)
    cn = np.ascontiguousarray(num, dtype=np.complex128).tolist()
    cd = np.ascontiguousarray(den, dtype=np.complex128).tolist()
    n = cn[-1]
    d = cd[-1]
    for k in range(len(cn) - 2, -1, -1):
        n = n * z + cn[k]
        d = d * z + cd[k]
    ad = abs(d)
    if ad <= 1e-300:
        return np.inf, ad
    return (n / d).real, ad


def ratio_min_re(
    num: np.ndarray, den: np.ndarray, zs: np.ndarray
) -> tuple[float, int, float]:
    """Minimum of Re(num(z)/den(z)) over the points zs.

    Returns (min_value, first argmin index, min |den(z)|).  Points where the
    denominator vanishes to working precision are excluded from the minimum;
    the caller inspects min |den| to decide whether that happened.
    """
    num = np.ascontiguousarray(num, dtype=np.complex128)
    den = np.ascontiguousarray(den, dtype=np.complex128)
    zs = np.ascontiguousarray(zs, dtype=np.complex128)
    wn = np.full(zs.shape, num[-1])
    wd = np.full(zs.shape, den[-1])
    for k in range(num.size - 2, -1, -1):
        wn *= zs
        wn += num[k]
        wd *= zs
        wd += den[k]
    abs_den = np.abs(wd)
    min_abs_den = float(abs_den.min())
    with np.errstate(divide="ignore", invalid="ignore"):
        re = (wn / wd).real
    re = np.where(abs_den > 1e-300, re, np.inf)
    idx = int(np.argmin(re))
    return float(re[idx]), idx, min_abs_den


def _coeff_triple(q: float, p1, p2, p3):
    """First three nontrivial coefficients induced by (p1, p2, p3)."""
    a2 = p1 / q
    a3 = (q * p2 + p1 * p1) / (q * q * (1.0 + q))
    a4 = (p3 * q * q * (1.0 + q) + p1 * p2 * q * (2.0 + q) + p1**3) / (
        q**3 * (1.0 + q) * (1.0 + q + q * q)
    )
    return a2, a3, a4


def hankel_grid_max(
    q: float,
    p1s: np.ndarray,
    rhos: np.ndarray,
    thxs: np.ndarray,
    thzs: np.ndarray,
) -> tuple[float, tuple[int, int, int, int]]:
    """Maximum of |a2 a4 - a3^2| over the coefficient-triple grid.

    Grid axes: p1 (real), |x|, arg x, arg zc with |zc| = 1.  Ties break to
    the lexicographically first grid index.
    """
    p1 = np.asarray(p1s, dtype=np.float64)[:, None, None, None]
    rho = np.asarray(rhos, dtype=np.float64)[None, :, None, None]
    thx = np.asarray(thxs, dtype=np.float64)[None, None, :, None]
    thz = np.asarray(thzs, dtype=np.float64)[None, None, None, :]
    x = rho * np.exp(1j * thx)
    zc = np.exp(1j * thz)
    gap = 4.0 - p1 * p1
    p2 = 0.5 * (p1 * p1 + x * gap)
    p3 = 0.25 * (
        p1**3 + 2.0 * gap * p1 * x - p1 * gap * x * x + 2.0 * gap * (1.0 - rho * rho) * zc
    )
    a2, a3, a4 = _coeff_triple(q, p1, p2, p3)
    vals = np.abs(a2 * a4 - a3 * a3)
    flat = int(np.argmax(vals))
    idx = np.unravel_index(flat, vals.shape)
    return float(vals[idx]), tuple(int(i) for i in idx)


def fs_grid_max(
    q: float,
    mu: complex,
    p1s: np.ndarray,
    rhos: np.ndarray,
    thxs: np.ndarray,
) -> tuple[float, tuple[int, int, int]]:
    """Maximum of |a3 - mu a2^2| over the (p1, x) slice of the triple grid."""
    p1 = np.asarray(p1s, dtype=np.float64)[:, None, None]
    rho = np.asarray(rhos, dtype=np.float64)[None, :, None]
    thx = np.asarray(thxs, dtype=np.float64)[None, None, :]
    x = rho * np.exp(1j * thx)
    gap = 4.0 - p1 * p1
    p2 = 0.5 * (p1 * p1 + x * gap)
    a2 = p1 / q
    a3 = (q * p2 + p1 * p1) / (q * q * (1.0 + q))
    vals = np.abs(a3 - mu * a2 * a2)
    flat = int(np.argmax(vals))
    idx = np.unravel_index(flat, vals.shape)
    return float(vals[idx]), tuple(int(i) for i in idx)
