import math

import numpy as np
import pytest

from dronecell.analytic import (
    QuadratureSettings,
    abs_kernel_derivative,
    coverage_abs,
    coverage_tbs,
    laplace_abs_derivative,
    laplace_abs_interference,
    laplace_tbs_interference,
)
from dronecell.config import boundaries
from dronecell.montecarlo import SimSettings, Station, simulate_coverage, simulate_interference_laplace

TIGHT = QuadratureSettings(abs_tol=1e-12, rel_tol=1e-10, max_subdivisions=10)


# --- Laplace transform of the interference at the TBS ------------------------


def test_laplace_tbs_at_zero_is_one(default_cfg):
    lap = laplace_tbs_interference(0.0, default_cfg)
    assert lap.value == 1.0 and lap.abs_err_est == 0.0


def test_laplace_tbs_no_transmit_power_limit(default_cfg):
    # P_max -> 0 removes the interference entirely.
    cfg = default_cfg.replace(p_max_dbm=-200.0)
    lap = laplace_tbs_interference(default_cfg.gamma_t / default_cfg.rho_b_mw, cfg)
    assert lap.value == pytest.approx(1.0, abs=1e-10)


def test_laplace_tbs_matches_monte_carlo(default_cfg):
    s = default_cfg.gamma_t / default_cfg.rho_b_mw
    lap = laplace_tbs_interference(s, default_cfg)
    assert 0.0 < lap.value < 1.0
    sim = SimSettings(runs=1_000_000, seed=42)
    est = simulate_interference_laplace(default_cfg, sim, Station.TBS, s)
    assert lap.value == pytest.approx(est.p_hat, abs=0.002)


def test_laplace_tbs_strictly_decreasing(default_cfg):
    values = [
        laplace_tbs_interference(s, default_cfg).value
        for s in (0.0, 1e5, 1e6, 1e7, 10**7.5, 1e8)
    ]
    assert all(a > b for a, b in zip(values, values[1:]))


# --- TBS coverage -------------------------------------------------------------


def test_coverage_tbs_no_interference_closed_form(default_cfg):
    # exp(-(gamma_T/rho_B) sigma^2) = exp(-10^(-2.5)) at default parameters.
    cfg = default_cfg.replace(p_max_dbm=-200.0)
    expected = math.exp(-(10.0**-2.5))
    assert expected == pytest.approx(0.99684, abs=5e-6)
    assert coverage_tbs(cfg).value == pytest.approx(expected, abs=1e-9)


def test_coverage_tbs_matches_monte_carlo(default_cfg):
    res = coverage_tbs(default_cfg)
    est_t, _ = simulate_coverage(default_cfg, SimSettings(runs=1_000_000, seed=9))
    assert res.value == pytest.approx(est_t.p_hat, abs=3 * est_t.std_err + 0.002)


def test_coverage_tbs_monotone_then_plateau(default_cfg):
    b = boundaries(default_cfg)
    below = [coverage_tbs(default_cfg.replace(h=float(h))).value
             for h in np.linspace(10.0, b.z_cap, 25)]
    assert all(a >= b_ - 1e-12 for a, b_ in zip(below, below[1:]))
    plateau = [coverage_tbs(default_cfg.replace(h=float(h))).value
               for h in np.linspace(b.z_cap, 1000.0, 8)]
    assert max(plateau) - min(plateau) < 1e-10


def test_coverage_tbs_non_increasing_in_gamma(default_cfg):
    values = [
        coverage_tbs(default_cfg.replace(gamma_t_db=g)).value
        for g in (-10.0, -5.0, 0.0, 5.0, 10.0)
    ]
    assert all(a > b for a, b in zip(values, values[1:]))


# --- Laplace transform of the interference at the ABS -------------------------


def test_laplace_abs_at_zero_is_one(default_cfg):
    lap = laplace_abs_interference(0.0, default_cfg)
    assert lap.value == 1.0


def test_abs_kernel_rayleigh_degeneracy(default_cfg, rng):
    """Order-1 Gamma kernel coincides with the Rayleigh form 1/(1 + s c)."""
    h, d = default_cfg.h, default_cfg.d
    lo = math.hypot(default_cfg.r2, h)
    hi = math.hypot(default_cfg.r1 + d, h)
    z = rng.uniform(lo, hi, 100)
    omega = rng.uniform(-math.pi, math.pi, 100)
    ground2 = z**2 - h**2
    d_t2 = ground2 + d**2 - 2.0 * np.sqrt(ground2) * d * np.cos(omega)
    c = default_cfg.rho_b_mw * z ** (-default_cfg.alpha_cd) * d_t2 ** (default_cfg.alpha_b / 2)
    s = 5e5
    np.testing.assert_allclose(
        abs_kernel_derivative(s, c, 1, 0), 1.0 / (1.0 + s * c), rtol=1e-12
    )


def test_laplace_abs_matches_monte_carlo(default_cfg):
    z_test = 220.0
    p_a = min(default_cfg.rho_d_mw * z_test**default_cfg.alpha_dd, default_cfg.p_max_mw)
    s = default_cfg.m_dd * default_cfg.gamma_a * z_test**default_cfg.alpha_dd / p_a
    assert s == pytest.approx(5e5, rel=1e-12)  # inversion makes s = m gamma / rho_D
    lap = laplace_abs_interference(s, default_cfg)
    est = simulate_interference_laplace(
        default_cfg, SimSettings(runs=1_000_000, seed=17), Station.ABS, s
    )
    assert lap.value == pytest.approx(est.p_hat, abs=0.002)


def test_laplace_abs_strictly_decreasing(default_cfg):
    values = [
        laplace_abs_interference(s, default_cfg).value for s in (0.0, 1e4, 1e5, 1e6, 1e7)
    ]
    assert all(a > b for a, b in zip(values, values[1:]))


# --- Laplace derivatives -------------------------------------------------------


def test_derivative_order_zero_equals_transform(default_cfg):
    s = 5e5
    assert laplace_abs_derivative(s, 0, default_cfg) == pytest.approx(
        laplace_abs_interference(s, default_cfg).value, rel=1e-9
    )


def test_derivative_against_finite_difference(default_cfg):
    s = 5e5
    delta = 1e-6 * s
    deriv = laplace_abs_derivative(s, 1, default_cfg, TIGHT)
    fd = (
        laplace_abs_interference(s + delta, default_cfg, TIGHT).value
        - laplace_abs_interference(s - delta, default_cfg, TIGHT).value
    ) / (2 * delta)
    assert deriv == pytest.approx(fd, rel=1e-4)


def test_derivative_sign_alternation(default_cfg):
    for s in (1e4, 5e5, 2e6):
        for k in range(default_cfg.m_dd):
            value = laplace_abs_derivative(s, k, default_cfg)
            assert (-1.0) ** k * value > 0.0


def test_derivative_order_bounds(default_cfg):
    with pytest.raises(ValueError):
        laplace_abs_derivative(1e5, default_cfg.m_dd, default_cfg)


# --- ABS coverage --------------------------------------------------------------


def test_coverage_abs_closed_form_m1_no_interference(default_cfg):
    # Full inversion with m_DD = 1 and no interferer: coverage is
    # exp(-gamma_A sigma^2 / rho_D), independent of the AsUE position.
    cfg = default_cfg.replace(m_dd=1, rho_b_dbm=-360.0)  # interferer power -> 0
    expected = math.exp(-default_cfg.gamma_a * cfg.sigma2_mw / cfg.rho_d_mw)
    assert expected == pytest.approx(0.99999, abs=1e-5)
    assert coverage_abs(cfg).value == pytest.approx(expected, abs=1e-8)


def test_coverage_abs_matches_monte_carlo(default_cfg):
    res = coverage_abs(default_cfg)
    _, est_a = simulate_coverage(default_cfg, SimSettings(runs=1_000_000, seed=23))
    assert res.value == pytest.approx(est_a.p_hat, abs=3 * est_a.std_err + 0.002)


def test_coverage_abs_matches_monte_carlo_saturated(default_cfg):
    cfg = default_cfg.replace(h=700.0)
    res = coverage_abs(cfg)
    _, est_a = simulate_coverage(cfg, SimSettings(runs=1_000_000, seed=29))
    assert res.value == pytest.approx(est_a.p_hat, abs=3 * est_a.std_err + 0.002)


def test_coverage_abs_non_increasing_in_gamma(default_cfg):
    values = [
        coverage_abs(default_cfg.replace(gamma_a_db=g)).value
        for g in (-10.0, -5.0, 0.0, 5.0, 10.0)
    ]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_coverage_in_unit_interval(default_cfg):
    for h in (1.0, 200.0, 625.0, 631.0, 900.0):
        cfg = default_cfg.replace(h=h)
        assert 0.0 <= coverage_tbs(cfg).value <= 1.0
        assert 0.0 <= coverage_abs(cfg).value <= 1.0


def test_regime_boundary_continuity(default_cfg):
    """Coverage is continuous in h across both power-control boundaries."""
    b = boundaries(default_cfg)
    eps = 1e-4  # keeps the genuine slope contribution ~1.5e-7, below the bound
    for h0 in (b.h_low, b.z_cap):
        lo, hi = h0 - eps, h0 + eps
        assert abs(
            coverage_tbs(default_cfg.replace(h=lo)).value
            - coverage_tbs(default_cfg.replace(h=hi)).value
        ) < 1e-6
        assert abs(
            coverage_abs(default_cfg.replace(h=lo)).value
            - coverage_abs(default_cfg.replace(h=hi)).value
        ) < 1e-6


def test_negative_s_rejected(default_cfg):
    with pytest.raises(ValueError):
        laplace_tbs_interference(-1.0, default_cfg)
    with pytest.raises(ValueError):
        laplace_abs_interference(-1.0, default_cfg)
