# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels for the grid and brute-force hot loops.

Semantics match `_ref.py`: same per-point arithmetic, strict comparisons so
ties resolve to the first (lexicographic) index.  The Horner loop runs four
points at a time to break the latency chain of sequential evaluation.
"""

from libc.math cimport INFINITY, cos, sin

import numpy as np


def ratio_eval(num, den, zs):
    """Evaluate num(z)/den(z) at each z (delegates to the NumPy path)."""
    from . import _ref
    return _ref.ratio_eval(num, den, zs)


cdef inline double _cabs(double complex z) noexcept nogil:
    cdef double re = z.real, im = z.imag
    if re < 0:
        re = -re
    if im < 0:
        im = -im
    if re < im:
        re, im = im, re
    if re == 0.0:
        return 0.0
    im /= re
    return re * (1.0 + im * im) ** 0.5


def ratio_point(num, den, double complex z):
    """Re(num(z)/den(z)) and |den(z)| at a single point (refinement step)."""
    cdef double complex[::1] cn = np.ascontiguousarray(num, dtype=np.complex128)
    cdef double complex[::1] cd = np.ascontiguousarray(den, dtype=np.complex128)
    cdef Py_ssize_t k, m = cn.shape[0]
    cdef double complex n0 = cn[m - 1], d0 = cd[m - 1]
    cdef double ad
    with nogil:
        for k in range(m - 2, -1, -1):
            n0 = n0 * z + cn[k]
            d0 = d0 * z + cd[k]
        ad = _cabs(d0)
    if ad <= 1e-300:
        return INFINITY, ad
    return (n0 / d0).real, ad


def ratio_min_re(num, den, zs):
    """Minimum of Re(num(z)/den(z)) over points zs; see _ref.ratio_min_re."""
    cdef double complex[::1] cn = np.ascontiguousarray(num, dtype=np.complex128)
    cdef double complex[::1] cd = np.ascontiguousarray(den, dtype=np.complex128)
    cdef double complex[::1] cz = np.ascontiguousarray(zs, dtype=np.complex128)
    cdef Py_ssize_t npts = cz.shape[0], m = cn.shape[0]
    cdef Py_ssize_t i, k, t, best_i = 0
    cdef Py_ssize_t nblk = npts - (npts & 3)
    cdef double complex z0, z1, z2, z3, ck, dk
    cdef double complex n0, n1, n2, n3, d0, d1, d2, d3
    cdef double complex wn[4]
    cdef double complex wd[4]
    cdef double best = INFINITY, min_abs_den = INFINITY, ad, re
    with nogil:
        for i in range(0, nblk, 4):
            z0 = cz[i]; z1 = cz[i + 1]; z2 = cz[i + 2]; z3 = cz[i + 3]
            ck = cn[m - 1]
            n0 = ck; n1 = ck; n2 = ck; n3 = ck
            dk = cd[m - 1]
            d0 = dk; d1 = dk; d2 = dk; d3 = dk
            for k in range(m - 2, -1, -1):
                ck = cn[k]; dk = cd[k]
                n0 = n0 * z0 + ck; d0 = d0 * z0 + dk
                n1 = n1 * z1 + ck; d1 = d1 * z1 + dk
                n2 = n2 * z2 + ck; d2 = d2 * z2 + dk
                n3 = n3 * z3 + ck; d3 = d3 * z3 + dk
            wn[0] = n0; wn[1] = n1; wn[2] = n2; wn[3] = n3
            wd[0] = d0; wd[1] = d1; wd[2] = d2; wd[3] = d3
            for t in range(4):
                ad = _cabs(wd[t])
                if ad < min_abs_den:
                    min_abs_den = ad
                if ad > 1e-300:
                    re = (wn[t] / wd[t]).real
                    if re < best:
                        best = re
                        best_i = i + t
        for i in range(nblk, npts):
            z0 = cz[i]
            n0 = cn[m - 1]
            d0 = cd[m - 1]
            for k in range(m - 2, -1, -1):
                n0 = n0 * z0 + cn[k]
                d0 = d0 * z0 + cd[k]
            ad = _cabs(d0)
            if ad < min_abs_den:
                min_abs_den = ad
            if ad > 1e-300:
                re = (n0 / d0).real
                if re < best:
                    best = re
                    best_i = i
    return best, best_i, min_abs_den


def hankel_grid_max(double q, p1s, rhos, thxs, thzs):
    """Maximum of |a2 a4 - a3^2| over the coefficient-triple grid."""
    cdef double[::1] p1v = np.ascontiguousarray(p1s, dtype=np.float64)
    cdef double[::1] rhov = np.ascontiguousarray(rhos, dtype=np.float64)
    cdef double[::1] thxv = np.ascontiguousarray(thxs, dtype=np.float64)
    cdef double[::1] thzv = np.ascontiguousarray(thzs, dtype=np.float64)
    cdef Py_ssize_t i, j, k, l
    cdef Py_ssize_t bi = 0, bj = 0, bk = 0, bl = 0
    cdef double p1, rho, gap, best = -INFINITY, val, zc_scale
    cdef double q2 = q * q, oq = 1.0 + q, oqq = 1.0 + q + q * q, d3
    cdef double complex x, zc, p2, p3_base, a2, a3, a4_base, fixed, coef
    d3 = q2 * q * oq * oqq
    with nogil:
        for i in range(p1v.shape[0]):
            p1 = p1v[i]
            gap = 4.0 - p1 * p1
            a2 = p1 / q
            for j in range(rhov.shape[0]):
                rho = rhov[j]
                zc_scale = 2.0 * gap * (1.0 - rho * rho)
                for k in range(thxv.shape[0]):
                    x = rho * (cos(thxv[k]) + 1j * sin(thxv[k]))
                    p2 = 0.5 * (p1 * p1 + x * gap)
                    a3 = (q * p2 + p1 * p1) / (q2 * oq)
                    # a4 = a4_base + (zc_scale/4) q^2 (1+q) zc / d3; split off zc
                    p3_base = 0.25 * (p1 * p1 * p1 + 2.0 * gap * p1 * x - p1 * gap * x * x)
                    a4_base = (p3_base * q2 * oq + p1 * p2 * q * (2.0 + q) + p1 * p1 * p1) / d3
                    fixed = a2 * a4_base - a3 * a3
                    coef = a2 * (0.25 * zc_scale * q2 * oq) / d3
                    for l in range(thzv.shape[0]):
                        zc = cos(thzv[l]) + 1j * sin(thzv[l])
                        val = _cabs(fixed + coef * zc)
                        if val > best:
                            best = val
                            bi = i; bj = j; bk = k; bl = l
    return best, (bi, bj, bk, bl)


def fs_grid_max(double q, double complex mu, p1s, rhos, thxs):
    """Maximum of |a3 - mu a2^2| over the (p1, x) slice of the triple grid."""
    cdef double[::1] p1v = np.ascontiguousarray(p1s, dtype=np.float64)
    cdef double[::1] rhov = np.ascontiguousarray(rhos, dtype=np.float64)
    cdef double[::1] thxv = np.ascontiguousarray(thxs, dtype=np.float64)
    cdef Py_ssize_t i, j, k
    cdef Py_ssize_t bi = 0, bj = 0, bk = 0
    cdef double p1, rho, gap, best = -INFINITY, val
    cdef double q2 = q * q, oq = 1.0 + q
    cdef double complex x, p2, a2, a3
    with nogil:
        for i in range(p1v.shape[0]):
            p1 = p1v[i]
            gap = 4.0 - p1 * p1
            a2 = p1 / q
            for j in range(rhov.shape[0]):
                rho = rhov[j]
                for k in range(thxv.shape[0]):
                    x = rho * (cos(thxv[k]) + 1j * sin(thxv[k]))
                    p2 = 0.5 * (p1 * p1 + x * gap)
                    a3 = (q * p2 + p1 * p1) / (q2 * oq)
                    val = _cabs(a3 - mu * a2 * a2)
                    if val > best:
                        best = val
                        bi = i; bj = j; bk = k
    return best, (bi, bj, bk)
