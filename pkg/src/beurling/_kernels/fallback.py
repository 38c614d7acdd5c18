"""Vectorized numpy implementations of the Dirichlet-sum kernels.

Same contracts as the compiled module ``_dirichlet``: each function returns
the complex sum together with the sum of absolute term values, so callers can
attach the round-off certificate n * eps * sum|terms|.  numpy's pairwise
summation keeps the actual error far below that bound.
"""

import numpy as np

_CHUNK = 1 << 18


def power_sum(logs, weights, sigma, t):
    p = weights * np.exp(-sigma * logs)
    x = t * logs
    val = complex(np.dot(p, np.cos(x)), -np.dot(p, np.sin(x)))
    return val, float(np.sum(p))


def power_sum_logw(logs, weights, sigma, t):
    p = weights * logs * np.exp(-sigma * logs)
    x = t * logs
    val = complex(np.dot(p, np.cos(x)), -np.dot(p, np.sin(x)))
    return val, float(np.sum(p))


def power_sum_t_grid(logs, weights, sigma, t0, dt, m):
    out = np.zeros(m, dtype=np.complex128)
    abssum = 0.0
    for lo in range(0, logs.shape[0], _CHUNK):
        L = logs[lo:lo + _CHUNK]
        p = weights[lo:lo + _CHUNK] * np.exp(-sigma * L)
        abssum += float(np.sum(p))
        z = p * np.exp(-1j * t0 * L)
        q = np.exp(-1j * dt * L)
        for j in range(m):
            out[j] += np.sum(z)
            z *= q
    return out, abssum


def power_sum_sigma_grid(logs, weights, t, sigma0, dsigma, m):
    out = np.zeros(m, dtype=np.complex128)
    ab = np.zeros(m, dtype=np.float64)
    for lo in range(0, logs.shape[0], _CHUNK):
        L = logs[lo:lo + _CHUNK]
        p = weights[lo:lo + _CHUNK] * np.exp(-sigma0 * L)
        q = np.exp(-dsigma * L)
        c = np.exp(-1j * t * L)
        for j in range(m):
            out[j] += np.dot(p, c)
            ab[j] += np.sum(p)
            p = p * q
    return out, ab
