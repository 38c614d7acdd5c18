# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for count-weighted Dirichlet power sums.

Everything here evaluates sums of the shape

    sum_k w_k * nu_k^(-s)  =  sum_k w_k exp(-sigma*L_k) (cos(t*L_k) - i sin(t*L_k)),

with L_k = log nu_k, w_k > 0, s = sigma + i t.  These sums dominate the
runtime of zeta evaluation and zero sweeps, so they live in C.

Single-point kernels use Neumaier-compensated accumulation; grid kernels use
plain accumulation plus a phase-rotation recurrence (one complex multiply per
term and grid point instead of a sin/cos pair).  In both cases the round-off
is covered by the certificate term n * eps * sum_k |term_k|, which is why each
kernel also returns the sum of absolute values.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, fabs, sin

ctypedef cnp.float64_t f64


cdef inline void kadd(double x, double* s, double* c) nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


def power_sum(f64[::1] logs, f64[::1] weights, double sigma, double t):
    """sum w*exp(-s*L); returns (value, sum of |terms|)."""
    cdef Py_ssize_t n = logs.shape[0], k
    cdef double re = 0, cre = 0, im = 0, cim = 0, ab = 0, cab = 0
    cdef double L, p, x
    with nogil:
        for k in range(n):
            L = logs[k]
            p = weights[k] * exp(-sigma * L)
            x = t * L
            kadd(p * cos(x), &re, &cre)
            kadd(-p * sin(x), &im, &cim)
            kadd(p, &ab, &cab)
    return complex(re + cre, im + cim), ab + cab


def power_sum_logw(f64[::1] logs, f64[::1] weights, double sigma, double t):
    """sum w*L*exp(-s*L); returns (value, sum of |terms|)."""
    cdef Py_ssize_t n = logs.shape[0], k
    cdef double re = 0, cre = 0, im = 0, cim = 0, ab = 0, cab = 0
    cdef double L, p, x
    with nogil:
        for k in range(n):
            L = logs[k]
            p = weights[k] * L * exp(-sigma * L)
            x = t * L
            kadd(p * cos(x), &re, &cre)
            kadd(-p * sin(x), &im, &cim)
            kadd(p, &ab, &cab)
    return complex(re + cre, im + cim), ab + cab


def power_sum_t_grid(f64[::1] logs, f64[::1] weights, double sigma,
                     double t0, double dt, Py_ssize_t m):
    """Values at s = sigma + i(t0 + j*dt), j = 0..m-1.

    Returns (complex ndarray of length m, sum of |terms|).  abs-sum is shared
    by all grid points since |nu^(-s)| depends on sigma only.
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(m, dtype=np.complex128)
    cdef double complex* o = <double complex*> out.data
    cdef Py_ssize_t n = logs.shape[0], k, j
    cdef double L, p, ab = 0, cab = 0
    cdef double zr, zi, qr, qi, tr
    with nogil:
        for k in range(n):
            L = logs[k]
            p = weights[k] * exp(-sigma * L)
            kadd(p, &ab, &cab)
            zr = p * cos(t0 * L)
            zi = -p * sin(t0 * L)
            qr = cos(dt * L)
            qi = -sin(dt * L)
            for j in range(m):
                o[j] = o[j] + (zr + 1j * zi)
                tr = zr * qr - zi * qi
                zi = zr * qi + zi * qr
                zr = tr
    return out, ab + cab


def power_sum_sigma_grid(f64[::1] logs, f64[::1] weights, double t,
                         double sigma0, double dsigma, Py_ssize_t m):
    """Values at s = (sigma0 + j*dsigma) + i*t, j = 0..m-1.

    Returns (complex ndarray of length m, float ndarray of abs-sums).
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(m, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ab = np.zeros(m, dtype=np.float64)
    cdef double complex* o = <double complex*> out.data
    cdef double* a = <double*> ab.data
    cdef Py_ssize_t n = logs.shape[0], k, j
    cdef double L, p, q, cr, ci
    with nogil:
        for k in range(n):
            L = logs[k]
            p = weights[k] * exp(-sigma0 * L)
            q = exp(-dsigma * L)
            cr = cos(t * L)
            ci = -sin(t * L)
            for j in range(m):
                o[j] = o[j] + p * (cr + 1j * ci)
                a[j] += p
                p *= q
    return out, ab
