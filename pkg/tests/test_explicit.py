"""psi, the truncated zero-sum formula, kernel identities, positivity."""

import math

import numpy as np
import pytest

import oracles as orc
from beurling.explicit import (
    chebyshev_psi,
    clustering_statistic,
    error_shape,
    explicit_formula_report,
    kernel_identity_quadrature,
    local_density_report,
    mellin_kernel,
    positivity_polynomial,
    positivity_sum,
    psi_series,
    smoothing_weight,
    zero_sum_approximation,
)
from beurling.gammafn import GammaPoleError, gamma
from beurling.zeros import IncompleteDatabaseError, ZeroDatabase, sweep_zeros


# ---------------------------------------------------------------------------
# psi
# ---------------------------------------------------------------------------

def test_psi_at_one_is_zero(nat_table, gauss_table, single2_table):
    for t in (nat_table, gauss_table, single2_table):
        assert chebyshev_psi(t, 1.0) == 0.0


def test_psi_nat_small(nat_table):
    # prime powers up to 10: 2,3,4,5,7,8,9 contribute log(2520) in total
    assert chebyshev_psi(nat_table, 10.0) == pytest.approx(math.log(2520.0))


def test_psi_single_prime(single2_table):
    for k in (1, 3, 7, 11):
        assert chebyshev_psi(single2_table, 2.0**k + 0.5) == pytest.approx(k * math.log(2.0))


def test_psi_matches_sieve_oracle(nat_table):
    rng = np.random.default_rng(2)
    for x in rng.uniform(2.0, nat_table.cutoff, 12):
        assert chebyshev_psi(nat_table, x) == pytest.approx(orc.psi_classical(x), rel=1e-12)


def test_psi_monotone_with_exact_jumps(gauss_table):
    rows = psi_series(gauss_table, np.linspace(1.0, gauss_table.cutoff, 101))
    vals = [r.psi for r in rows]
    assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))
    # jump at a prime-power norm equals its mass
    i = int(np.searchsorted(gauss_table.norms, 5.0))
    jump = chebyshev_psi(gauss_table, 5.0) - chebyshev_psi(gauss_table, 4.999999)
    assert jump == pytest.approx(gauss_table.lambda_mass[i])


def test_psi_beyond_cutoff_refused(nat_table):
    with pytest.raises(ValueError):
        chebyshev_psi(nat_table, 1e9)


def test_delta_sanity_on_regular_systems(nat_table, gauss_table):
    for t in (nat_table, gauss_table):
        for x in np.linspace(1000.0, t.cutoff, 25):
            assert abs(chebyshev_psi(t, x) - x) / x <= 0.1


# ---------------------------------------------------------------------------
# Truncated zero sum
# ---------------------------------------------------------------------------

def test_zero_sum_real_after_pairing(nat_db):
    v = zero_sum_approximation(nat_db, 300.0, 50.0)
    assert isinstance(v, float)


def test_zero_sum_validation(nat_db):
    with pytest.raises(ValueError):
        zero_sum_approximation(nat_db, 40.0, 50.0)  # T >= x
    with pytest.raises(IncompleteDatabaseError):
        zero_sum_approximation(nat_db, 1000.0, 500.0)


def test_formula_report_naturals(nat_table_1e5, nat_ctx_1e5, nat_db):
    rows = explicit_formula_report(
        nat_table_1e5, nat_ctx_1e5.params, nat_db, [500.0], 50.0
    )
    r = rows[0]
    assert r.psi == pytest.approx(orc.psi_classical(500.0), rel=1e-12)
    # oracle-frozen residual for T = 50 at x = 500 (29-zero truth gives the
    # same leading digits): the truncated formula lands within a unit
    assert r.residual == pytest.approx(0.8268, abs=2e-3)
    assert r.shape_ratio < 1e-4
    assert error_shape(nat_ctx_1e5.params, 500.0, 50.0, nat_db.b) > 0


def test_formula_single_prime_empty_db(single2_table, single2_ctx):
    db = ZeroDatabase(fingerprint=single2_table.fingerprint(), b=0.6)
    from beurling.zeros import SweepCertificate

    db.certificates = [SweepCertificate(0.6, 0.0, 50.0, 0, 0)]
    x = 1000.0
    approx = zero_sum_approximation(db, x, 20.0)
    assert approx == x
    resid = abs(chebyshev_psi(single2_table, x) - approx)
    # psi grows like log^2 here, so the deviation is of order x itself
    assert resid > 0.9 * (x - chebyshev_psi(single2_table, x))


# ---------------------------------------------------------------------------
# Kernel machinery
# ---------------------------------------------------------------------------

def test_kernel_power_identity():
    assert mellin_kernel(2.0, 5.0) == pytest.approx(25.0)
    assert mellin_kernel(2.0, 1.7) == pytest.approx(1.7**2)


def test_kernel_pole_raises():
    for w in (0.0, -2.0, -4.0):
        with pytest.raises(GammaPoleError):
            mellin_kernel(w, 2.0)


def test_smoothing_weight_values():
    assert smoothing_weight(3.0, 3.0) == pytest.approx(2.0 / math.e)
    with pytest.raises(ValueError):
        smoothing_weight(0.5, 2.0)


@pytest.mark.parametrize("nu,x", [(2.0, 3.0), (5.0, 2.0), (10.0, 10.0)])
def test_kernel_identity_quadrature(nu, x):
    q = kernel_identity_quadrature(nu, x)
    assert abs(q - smoothing_weight(x, nu)) < 1e-6
    assert abs(q.imag) < 1e-9


def test_gamma_against_mpmath():
    import mpmath as mp

    rng = np.random.default_rng(8)
    for _ in range(100):
        z = complex(rng.uniform(-1.2, 3.0), rng.uniform(-30.0, 30.0))
        if abs(z.imag) < 1e-3 and abs(z.real - round(z.real)) < 1e-3 and z.real <= 0.5:
            continue
        ref = complex(mp.gamma(mp.mpc(z)))
        assert abs(gamma(z) - ref) <= 1e-12 * abs(ref)


# ---------------------------------------------------------------------------
# Positivity
# ---------------------------------------------------------------------------

def test_positivity_polynomial_identity():
    u = np.linspace(0.0, 2.0 * math.pi, 10**4)
    p = positivity_polynomial(u)
    assert float(p.min()) >= -1e-12
    assert float(np.max(np.abs(p - 2.0 * (1.0 + np.cos(u)) ** 2))) < 1e-12
    assert positivity_polynomial(0.0) == pytest.approx(8.0)
    assert positivity_polynomial(math.pi) == pytest.approx(0.0, abs=1e-15)


def test_positivity_sum_nonnegative_up_to_tail(nat_ctx):
    rng = np.random.default_rng(12)
    for _ in range(20):
        gamma0 = rng.uniform(0.5, 40.0)
        s = rng.uniform(1.05, 2.5)
        x = rng.uniform(1.0, 500.0)
        value, tail = positivity_sum(nat_ctx, gamma0, s, x)
        assert value >= -tail


def test_positivity_sum_validation(nat_ctx):
    with pytest.raises(ValueError):
        positivity_sum(nat_ctx, 10.0, 0.9, 5.0)


# ---------------------------------------------------------------------------
# Clustering statistic
# ---------------------------------------------------------------------------

def test_clustering_empty_disks(single2_ctx):
    db = sweep_zeros(single2_ctx, 0.6, 22.0)
    stat = clustering_statistic(db, complex(0.7, 10.0), 0.3, 30.0, single2_ctx.theta)
    assert stat.lhs == 0.0


def test_clustering_monotone_in_y(nat_db, nat_ctx_1e5):
    rho0 = nat_db.records[0].rho
    vals = [
        clustering_statistic(nat_db, rho0, 0.5, y, nat_ctx_1e5.theta).lhs
        for y in (10.0, 20.0, 40.0)
    ]
    assert vals[0] >= vals[1] >= vals[2]


def test_clustering_first_zero_report(nat_db, nat_ctx_1e5):
    rho0 = nat_db.records[0].rho
    stat = clustering_statistic(nat_db, rho0, 0.5, 30.0, nat_ctx_1e5.theta)
    assert not stat.in_regime  # beta0 = 1/2 is far from the 1-line
    flags = dict(stat.regime_flags)
    assert not flags["beta0_above_threshold"]
    assert stat.rhs_core == pytest.approx(0.5 / (30.0 * 0.5), rel=1e-9)
    # with radius 0.5 the seed sits exactly on the disk boundary and no other
    # zero is that close to 1 + i*gamma0 or 1 + 2i*gamma0
    assert stat.lhs == 0.0


def test_clustering_weighted_sum_matches_direct(nat_db, nat_ctx_1e5):
    rho0 = nat_db.records[0].rho
    lam, y = 2.3, 30.0
    stat = clustering_statistic(nat_db, rho0, lam, y, nat_ctx_1e5.theta)
    expected = 0.0
    for r in nat_db.records:
        for j in (1, 2):
            center = complex(1.0, j * rho0.imag)
            if abs(r.rho - center) <= lam and not (j == 1 and r.rho == rho0):
                expected += math.exp(-y * (1.0 - r.beta))
    assert stat.lhs == pytest.approx(expected, rel=1e-12)
    assert stat.lhs > 0.0  # the zero near 2*gamma0 enters the second disk


def test_clustering_needs_coverage(nat_db, nat_ctx_1e5):
    with pytest.raises(IncompleteDatabaseError):
        clustering_statistic(nat_db, complex(0.5, 40.0), 0.5, 30.0, nat_ctx_1e5.theta)


# ---------------------------------------------------------------------------
# Local density window
# ---------------------------------------------------------------------------

def test_local_density_zero_free_system(single2_ctx):
    db = sweep_zeros(single2_ctx, 0.6, 36.0)
    rep = local_density_report(single2_ctx, db, b=0.75, h=2.0, tau=30.0, delta=0.012)
    assert rep.hypothesis_count == 0
    assert rep.window_count == 0
    assert rep.ratio == 0.0


def test_local_density_naturals(nat_db, nat_ctx_1e5):
    rep = local_density_report(nat_ctx_1e5, nat_db, b=0.6, h=2.0, tau=30.0, delta=0.04)
    assert rep.hypothesis_count == 0  # no zeros right of 0.6
    assert rep.window_count == 0
    flags = dict(rep.regime_flags)
    assert flags["zero_free_hypothesis"]
    assert flags["h_at_least_2"]
    assert rep.log_deriv_max > 0.0
    assert rep.log_deriv_bound > 0.0


def test_local_density_delta_window_flag(nat_db, nat_ctx_1e5):
    b, theta = 0.6, nat_ctx_1e5.theta
    rep = local_density_report(
        nat_ctx_1e5, nat_db, b=b, h=2.0, tau=30.0, delta=(b - theta) / 5.0
    )
    assert not dict(rep.regime_flags)["delta_window"]
    assert not rep.in_regime
