"""Independent reference implementations used only by the tests.

Nothing here shares code with the package: enumeration is plain recursive
generation, the classical zeta comes from an Euler-Maclaurin expansion (with
mpmath as a second opinion), zero ordinates come from sign changes of
Hardy-type real functions, and arithmetic functions are brute-force divisor
loops.
"""

from __future__ import annotations

import math
from functools import lru_cache

import mpmath as mp
import numpy as np
from scipy.optimize import brentq
from scipy.special import loggamma

mp.mp.dps = 30


# ---------------------------------------------------------------------------
# Naive recursive enumeration
# ---------------------------------------------------------------------------

def naive_elements(copies, cutoff):
    """All semigroup element norms <= cutoff by recursive generation over the
    generator copies; returns a sorted list of norms (one entry per element).
    """
    out = []

    def rec(i, norm):
        out.append(norm)
        for j in range(i, len(copies)):
            nxt = norm * copies[j]
            if nxt <= cutoff:
                rec(j, nxt)
            elif copies[j] > cutoff / norm:
                break

    rec(0, 1)
    return sorted(out)


def naive_element_details(copies, cutoff):
    """(norm, divisor_count, mobius, factorization) per element: recursion
    over the exponent of each generator copy in index order."""
    out = []

    def rec(i, norm, fact):
        d = 1
        for _, e in fact:
            d *= e + 1
        mu = 0 if any(e >= 2 for _, e in fact) else (-1) ** len(fact)
        out.append((norm, d, mu, tuple(fact)))
        for j in range(i, len(copies)):
            p = copies[j]
            nxt = norm * p
            e = 1
            while nxt <= cutoff:
                rec(j + 1, nxt, fact + [(j, e)])
                nxt *= p
                e += 1

    rec(0, 1, [])
    out.sort()
    return out


# ---------------------------------------------------------------------------
# Classical zeta by Euler-Maclaurin
# ---------------------------------------------------------------------------

_BERNOULLI = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
)


def em_zeta(s: complex, n_cut: int | None = None, order: int = 8) -> complex:
    """Riemann zeta by the Euler-Maclaurin formula; good to ~1e-12 for the
    sigma > 0.25, |t| <= 120 region exercised here."""
    s = complex(s)
    if n_cut is None:
        n_cut = int(30 + 3.0 * abs(s.imag))
    n = np.arange(1, n_cut)
    total = complex(np.sum(n ** (-s)))
    total += n_cut ** (1.0 - s) / (s - 1.0)
    total += 0.5 * n_cut ** (-s)
    factor = s * n_cut ** (-s - 1.0)
    for k in range(1, order + 1):
        total += _BERNOULLI[k - 1] / math.factorial(2 * k) * factor
        # raise the rising product s(s+1)...(s+2k-2) and the power by 2
        factor *= (s + 2 * k - 1) * (s + 2 * k) / n_cut**2
    return total


def mp_zeta(s: complex) -> complex:
    return complex(mp.zeta(mp.mpc(s)))


def l_chi4(s: complex) -> complex:
    """Dirichlet L for the nontrivial character mod 4, via Hurwitz zeta."""
    sm = mp.mpc(s)
    return complex(4**(-sm) * (mp.zeta(sm, mp.mpf(1) / 4) - mp.zeta(sm, mp.mpf(3) / 4)))


def gauss_zeta(s: complex) -> complex:
    """Zeta of the Gaussian-ideal system: zeta(s) * L(s, chi4)."""
    return mp_zeta(s) * l_chi4(s)


# ---------------------------------------------------------------------------
# Zero ordinates from sign changes of Hardy-type functions
# ---------------------------------------------------------------------------

def _riemann_hardy(t: float) -> float:
    theta = float(loggamma(complex(0.25, 0.5 * t)).imag) - 0.5 * t * math.log(math.pi)
    z = complex(np.exp(1j * theta)) * em_zeta(complex(0.5, t))
    return z.real


def riemann_zero_near(t_lo: float, t_hi: float) -> float:
    """Ordinate of the critical-line zero bracketed by [t_lo, t_hi]."""
    return float(brentq(_riemann_hardy, t_lo, t_hi, xtol=1e-11))


def _chi4_hardy(t: float) -> float:
    theta = float(loggamma(complex(0.75, 0.5 * t)).imag) - 0.5 * t * math.log(math.pi / 4.0)
    z = complex(np.exp(1j * theta)) * l_chi4(complex(0.5, t))
    return z.real


def chi4_zero_near(t_lo: float, t_hi: float) -> float:
    return float(brentq(_chi4_hardy, t_lo, t_hi, xtol=1e-11))


# ---------------------------------------------------------------------------
# Arithmetic brute force (rational integers)
# ---------------------------------------------------------------------------

def divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    if n == 1:
        return 1
    m, cnt, p = n, 0, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            cnt += 1
        p += 1
    if m > 1:
        cnt += 1
    return (-1) ** cnt


def divisor_count(n: int) -> int:
    return len(divisors(n))


def truncated_mobius_sum(n: int, t_cut: float) -> int:
    """a(n) = sum of mu(d) over divisors d <= t_cut."""
    return sum(mobius(d) for d in divisors(n) if d <= t_cut)


def chi4(n: int) -> int:
    if n % 2 == 0:
        return 0
    return 1 if n % 4 == 1 else -1


def gauss_count(n: int) -> int:
    """Ideals of the Gaussian integers with norm n: sum of chi4 over divisors."""
    return sum(chi4(d) for d in divisors(n))


def psi_classical(x: float) -> float:
    """Chebyshev psi for the rational primes, by direct sieve."""
    limit = int(x)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p:: p] = False
    total = 0.0
    for p in np.nonzero(flags)[0]:
        p = int(p)
        pk = p
        while pk <= x:
            total += math.log(p)
            pk *= p
    return total
