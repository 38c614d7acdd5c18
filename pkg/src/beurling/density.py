"""Zero-detecting Dirichlet polynomials and density diagnostics.

The detecting coefficients are a(g) = sum of mu(h) over divisors h of g with
|h| <= T.  They satisfy a(unit) = 1, a(g) = 0 for 1 < |g| <= T and |a(g)| <=
d(g) everywhere, which makes

    H(T, Y, z) = 1 + sum_{T < |g| < Y} a(g) |g|^(-z)

small at zeta zeros for suitable T, Y while its leading 1 dominates; counting
zeros then reduces to mean-value estimates of the tail.  This module builds
the coefficients exactly (integer arithmetic, element by element during an
enumeration walk), aggregates them per norm (integer norms required), and
provides the empirical scans that go with the density exponent
(6 - 2*theta)/(1 - theta) * (1 - alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .semigroup import ElementTable, iter_elements
from .zeros import ZeroDatabase


class ConditionBError(ValueError):
    """Operation requires integer element norms."""


@dataclass
class DetectingCoefficients:
    """Per-norm aggregates of the truncated-Mobius detecting weights.

    Arrays are indexed by integer norm 0..Y (index 0 unused).  f_sum[m] is
    F(m) = sum of a(g) over |g| = m; abs_bound_ok records the elementwise
    check |a(g)| <= d(g).
    """

    t_cut: float
    y_cut: int
    counts: np.ndarray        # G(m)
    f_sum: np.ndarray         # F(m), exact integers
    a_sq_sum: np.ndarray      # sum of a(g)^2 over |g| = m
    d_sq_sum: np.ndarray      # sum of d(g)^2
    d_4_sum: np.ndarray       # sum of d(g)^4
    abs_bound_ok: bool
    unit_value: int
    max_small_abs: int        # max |a(g)| over 1 < |g| <= T (must be 0)

    def detect_sum(self, z: complex) -> complex:
        """H(T, Y, z) = 1 + sum_{T < m < Y} F(m) m^(-z), an exact finite sum."""
        m = np.arange(self.y_cut + 1)
        sel = (m > self.t_cut) & (m < self.y_cut) & (self.f_sum != 0)
        mm = m[sel].astype(np.float64)
        if mm.size == 0:
            return 1.0 + 0j
        fs = self.f_sum[sel].astype(np.float64)
        return complex(1.0 + np.sum(fs * np.exp(-z * np.log(mm))))


def _truncated_mobius_divisor_sum(factorization, copies, t_cut: float) -> int:
    """a(g): signed count of squarefree divisors with norm <= t_cut.

    Divisors come from choosing a subset of the distinct generator copies in
    g; exponent choices beyond 1 have mu = 0 and do not contribute.
    """
    prime_norms = [copies[c] for c, _e in factorization]

    def rec(i: int, norm, sign: int) -> int:
        if i == len(prime_norms):
            return sign
        total = rec(i + 1, norm, sign)  # copy i stays out
        nxt = norm * prime_norms[i]
        if nxt <= t_cut:
            total += rec(i + 1, nxt, -sign)
        return total

    return rec(0, 1, 1)


def detecting_coeffs(table: ElementTable, t_cut: float, y_cut: float) -> DetectingCoefficients:
    """Build a(g) per element and aggregate F(m) = sum_{|g|=m} a(g) for
    integer norms m <= Y.  Requires integer norms and T < Y <= cutoff."""
    if not table.integer_norms:
        raise ConditionBError("detecting coefficients need integer norms")
    if not t_cut < y_cut:
        raise ValueError("T must be below Y")
    if y_cut > table.cutoff:
        raise ValueError("Y beyond the table cutoff")
    y = int(y_cut)
    counts = np.zeros(y + 1, dtype=np.int64)
    f_sum = np.zeros(y + 1, dtype=np.int64)
    a_sq = np.zeros(y + 1, dtype=np.int64)
    d_sq = np.zeros(y + 1, dtype=np.int64)
    d_4 = np.zeros(y + 1, dtype=np.int64)
    copies = table.system.prime_copies(y_cut)
    abs_ok = True
    unit_value = None
    max_small = 0
    for norm, d, _mu, fact in iter_elements(table.system, float(y), with_factorization=True):
        m = int(norm)
        a = _truncated_mobius_divisor_sum(fact, copies, t_cut)
        if m == 1:
            unit_value = a
        elif m <= t_cut:
            max_small = max(max_small, abs(a))
        if abs(a) > d:
            abs_ok = False
        counts[m] += 1
        f_sum[m] += a
        a_sq[m] += a * a
        d_sq[m] += d * d
        d_4[m] += d**4
    return DetectingCoefficients(
        t_cut=float(t_cut),
        y_cut=y,
        counts=counts,
        f_sum=f_sum,
        a_sq_sum=a_sq,
        d_sq_sum=d_sq,
        d_4_sum=d_4,
        abs_bound_ok=abs_ok,
        unit_value=int(unit_value),
        max_small_abs=max_small,
    )


def cauchy_schwarz_margins(coeffs: DetectingCoefficients) -> np.ndarray:
    """Margins of F(m)^2 <= G(m) * sum a(g)^2 for every norm m <= Y
    (nonnegative when the inequality holds; it is an identity-level check)."""
    f2 = coeffs.f_sum.astype(np.float64) ** 2
    rhs = coeffs.counts.astype(np.float64) * coeffs.a_sq_sum.astype(np.float64)
    return rhs - f2


def holder_margin(coeffs: DetectingCoefficients, n_cut: int | None = None) -> float:
    """Margin of sum_{m<=N} F(m)^2 <= sqrt(sum_{|g|<=N} G(|g|)^2) *
    sqrt(sum_{|g|<=N} d(g)^4) (exponent pair p = q = 2)."""
    n = coeffs.y_cut if n_cut is None else int(n_cut)
    sl = slice(0, n + 1)
    lhs = float(np.sum(coeffs.f_sum[sl].astype(np.float64) ** 2))
    g_sq_elements = float(np.sum(coeffs.counts[sl].astype(np.float64) ** 3))
    d4_elements = float(np.sum(coeffs.d_4_sum[sl].astype(np.float64)))
    return math.sqrt(g_sq_elements) * math.sqrt(d4_elements) - lhs


# ---------------------------------------------------------------------------
# Moment growth (average-Ramanujan diagnostics)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MomentRow:
    exponent: float
    x: float
    f_value: float
    log_ratio: float  # log F_p(X) / log X


def moment_growth_report(table: ElementTable, exponents, x_min: float = 10.0) -> list[MomentRow]:
    """F_p(X) = (1/X) sum_{|g|<=X} G(|g|)^p over a doubling X-grid, with the
    trend ratio log F_p(X)/log X.  Decay of the ratio toward 0 supports the
    subpolynomial-moment hypothesis; no pass/fail is attached."""
    if not table.integer_norms:
        raise ConditionBError("moment diagnostics need integer norms")
    rows = []
    gcounts = table.counts.astype(np.float64)
    for p in exponents:
        if p <= 0:
            raise ValueError("moment exponent must be positive")
        x = float(x_min)
        while x <= table.cutoff:
            sel = table.norms <= x
            fp = float(np.sum(gcounts[sel] ** (1.0 + p))) / x
            rows.append(MomentRow(float(p), x, fp, math.log(max(fp, 1e-300)) / math.log(x)))
            x *= 2.0
    return rows


# ---------------------------------------------------------------------------
# Density scan against the exponent curve
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DensityRow:
    alpha: float
    count: int
    theoretical_exponent: float
    empirical_exponent: float  # log N / log T, nan when N = 0
    nontrivial_region: bool


@dataclass(frozen=True)
class DensityScanReport:
    theta: float
    t_max: float
    rows: tuple

    @property
    def counts_nonincreasing(self) -> bool:
        cs = [r.count for r in self.rows]
        return all(a >= b for a, b in zip(cs, cs[1:]))


def density_scan(db: ZeroDatabase, theta: float, alphas, t_max: float) -> DensityScanReport:
    """Empirical N(alpha, T) versus the density exponent curve
    (6-2*theta)/(1-theta) * (1-alpha); the scan marks the region
    alpha > (5-theta)/(6-2*theta) where the bound beats the trivial count."""
    alphas = sorted(float(a) for a in alphas)
    db.require_cover(min(alphas), 0.0, t_max)
    rows = []
    for a in alphas:
        n = db.count_two_sided(a, t_max)
        expo = (6.0 - 2.0 * theta) / (1.0 - theta) * (1.0 - a)
        emp = math.log(n) / math.log(t_max) if n > 0 else float("nan")
        rows.append(DensityRow(a, n, expo, emp, a > (5.0 - theta) / (6.0 - 2.0 * theta)))
    return DensityScanReport(theta=theta, t_max=t_max, rows=tuple(rows))


def proof_scale_parameters(theta: float, t_val: float, y_val: float, alpha: float) -> dict:
    """The zero-detection working scales for inspection: the low-height split
    X = log^2(T) * Y^(1-alpha) and the minimal admissible Y."""
    y0 = ((1.0 / (1.0 - theta)) * t_val ** (3.0 - theta)) ** (1.0 / (1.0 - theta))
    return {
        "x_split": math.log(t_val) ** 2 * y_val ** (1.0 - alpha),
        "y_minimal": y0,
    }


@dataclass(frozen=True)
class DetectAtZeroRow:
    beta: float
    gamma: float
    h_value: complex


def detect_at_zeros(
    coeffs: DetectingCoefficients,
    db: ZeroDatabase,
    beta_min: float,
) -> list[DetectAtZeroRow]:
    """H(T, Y, rho) at every database zero with beta > beta_min.  Purely
    diagnostic: the detection threshold |H - 1| > 1/2 belongs to scales far
    beyond desk-size tables."""
    rows = []
    for r in db.records:
        if r.beta > beta_min:
            rows.append(DetectAtZeroRow(r.beta, r.gamma, coeffs.detect_sum(r.rho)))
    return rows
