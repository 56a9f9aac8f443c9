"""Sweep engine and input-power optimizer."""
import math

import numpy as np
import pytest

from satskr.channels import ChannelPoint
from satskr.rates import RateParams, lb_asymptotic, lb_reverse, upper_bound
from satskr.sweeps import (
    FixedParams,
    GridSpec,
    SweepSpec,
    SweepValidationError,
    channel_at,
    fixed_problems,
    make_grid,
    optimize_mu,
    optimize_mu_for_channel,
    run_sweep,
    thread_count,
)

FARFIELD_FIXED = FixedParams(
    geometry="exclusion_zone", r_a_m=0.05, r_b_m=0.05, r_ex_m=0.05,
    L_km=100.0, lambda_nm=1550.0,
)
BEAM_FIXED = FixedParams(
    geometry="beam", w0_m=0.05, r_a_m=0.05, r_b_m=0.05, r_e_m=0.05,
    r_ex_m=0.05, L_km=10.0, lambda_nm=1550.0,
)


# --- grids ---

def test_make_grid_linear_and_log():
    np.testing.assert_array_equal(make_grid(0.0, 1.0, 5, "linear"),
                                  (0.0, 0.25, 0.5, 0.75, 1.0))
    log = make_grid(0.1, 1000.0, 5, "log")
    np.testing.assert_allclose(log, (0.1, 1.0, 10.0, 100.0, 1000.0),
                               rtol=1e-12)


def test_grid_spec_regenerates_identically():
    spec = GridSpec(start=1e13, stop=1e15, points=50, scale="log")
    assert spec.values() == make_grid(1e13, 1e15, 50, "log")
    assert spec.values() == spec.values()


def test_make_grid_rejects_bad_input():
    with pytest.raises(ValueError):
        make_grid(0.0, 1.0, 1, "linear")
    with pytest.raises(ValueError):
        make_grid(0.0, 1.0, 5, "log")  # log scale needs positive endpoints
    with pytest.raises(ValueError):
        make_grid(0.0, 1.0, 5, "cubic")


# --- validation ---

def test_validation_collects_all_problems():
    fixed = FixedParams(geometry="exclusion_zone", r_a_m=0.05, r_b_m=0.05,
                        r_ex_m=0.04, L_km=100.0, lambda_nm=1550.0,
                        frequency_hz=2e14)
    problems = fixed_problems(fixed, swept="mu")
    text = " | ".join(problems)
    assert len(problems) >= 2
    assert "r_ex_m" in text
    assert "frequency_hz" in text or "lambda_nm" in text


def test_swept_field_must_stay_unset():
    fixed = FixedParams(geometry="exclusion_zone", r_a_m=0.05, r_b_m=0.05,
                        r_ex_m=0.05, L_km=100.0, lambda_nm=1550.0, mu=10.0)
    spec = SweepSpec(variable="mu", fixed=fixed, grid=(1.0, 2.0))
    with pytest.raises(SweepValidationError) as err:
        run_sweep(spec)
    assert any("mu" in p for p in err.value.problems)


def test_beam_geometry_requires_waist():
    fixed = FixedParams(geometry="beam", r_a_m=0.05, r_b_m=0.05,
                        r_e_m=0.05, r_ex_m=0.05, L_km=10.0, lambda_nm=1550.0)
    problems = fixed_problems(fixed, swept="mu")
    assert any("w0_m" in p for p in problems)


def test_unknown_variable_and_scheme_rejected():
    spec = SweepSpec(variable="voltage", fixed=FARFIELD_FIXED, grid=(1.0, 2.0))
    with pytest.raises(SweepValidationError):
        run_sweep(spec)
    spec = SweepSpec(variable="mu", fixed=FARFIELD_FIXED,
                     schemes=("sideways",), grid=(1.0, 2.0))
    with pytest.raises(SweepValidationError):
        run_sweep(spec)


# --- channel construction ---

def test_channel_at_farfield_anchor():
    point = channel_at(FARFIELD_FIXED, "mu", 5.0)
    np.testing.assert_allclose(point.eta, 0.0025675349638629957, rtol=1e-12)
    assert point.kappa == 1.0
    assert point.n_e == 0.0  # optical carrier, cold sky


def test_channel_at_injects_thermal_noise_at_low_frequency():
    fixed = FixedParams(geometry="exclusion_zone", r_a_m=5.0, r_b_m=5.0,
                        r_ex_m=5.0, L_km=1.0, frequency_hz=1e9)
    point = channel_at(fixed)
    np.testing.assert_allclose(point.n_e, 62.01183053808921, rtol=1e-12)


def test_channel_at_unrestricted_forces_kappa_one():
    fixed = FixedParams(
        geometry="beam", w0_m=0.05, r_a_m=0.05, r_b_m=0.05, r_e_m=0.05,
        r_ex_m=0.5, L_km=30.0, lambda_nm=1550.0, unrestricted_eve=True,
    )
    point = channel_at(fixed)
    assert point.kappa == 1.0
    restricted = channel_at(
        FixedParams(geometry="beam", w0_m=0.05, r_a_m=0.05, r_b_m=0.05,
                    r_e_m=0.05, r_ex_m=0.5, L_km=30.0, lambda_nm=1550.0))
    assert restricted.kappa < 1e-3
    np.testing.assert_allclose(point.eta, restricted.eta, rtol=1e-12)


# --- input-power optimization ---

def test_optimizer_reports_unbounded_on_saturating_curve():
    # kappa=1 reverse rate saturates; its supremum is the asymptote
    channel = channel_at(FARFIELD_FIXED)
    report = optimize_mu_for_channel(channel, scheme="reverse")
    assert report.unbounded
    assert math.isinf(report.mu_star)
    assert report.rate_at_star == lb_asymptotic(channel, "reverse")
    np.testing.assert_allclose(report.rate_at_star, 0.0037089334079087877,
                               rtol=1e-12)


def test_optimizer_unbounded_direct_beam():
    fixed = FixedParams(geometry="beam", w0_m=0.05, r_a_m=0.05, r_b_m=0.05,
                        r_e_m=0.05, r_ex_m=0.2, L_km=10.0, lambda_nm=1550.0)
    report = optimize_mu(fixed, scheme="direct")
    assert report.unbounded
    np.testing.assert_allclose(report.rate_at_star, 12.473708186852987,
                               rtol=1e-9)


def test_optimizer_bounded_at_scan_ceiling_when_no_asymptote():
    # kappa underflows to exactly 0 here; the asymptote is undefined and the
    # upper bound diverges, so the optimizer reports the best scanned point
    channel = channel_at(
        FixedParams(geometry="beam", w0_m=0.05, r_a_m=0.05, r_b_m=0.05,
                    r_e_m=0.05, r_ex_m=0.5, L_km=10.0, lambda_nm=1550.0))
    assert channel.kappa == 0.0
    assert upper_bound(channel) == math.inf
    report = optimize_mu_for_channel(channel, scheme="direct")
    assert not report.unbounded
    assert report.mu_star == 1e7
    np.testing.assert_allclose(report.rate_at_star, 23.120226837860404,
                               rtol=1e-9)


def test_optimizer_finds_interior_maximum():
    channel = channel_at(FARFIELD_FIXED)
    report = optimize_mu_for_channel(channel, scheme="reverse", beta=0.95)
    assert not report.unbounded
    np.testing.assert_allclose(report.mu_star, 2.507510442869938, rtol=1e-5)
    np.testing.assert_allclose(report.rate_at_star, 0.0025754157509152442,
                               rtol=1e-9)
    # the refined optimum can never fall below plain scan samples
    for mu in np.logspace(-2, 4, 25):
        sample = lb_reverse(RateParams(mu=float(mu), channel=channel,
                                       beta=0.95))
        assert report.rate_at_star >= sample - 1e-15


def test_optimizer_degenerate_channel_yields_zero():
    report = optimize_mu_for_channel(ChannelPoint(0.0, 1.0, 0.0))
    assert report == type(report)(0.0, 0.0, False)


def test_optimizer_rejects_unknown_scheme():
    with pytest.raises(ValueError):
        optimize_mu_for_channel(ChannelPoint(0.5, 0.5, 0.0), scheme="upper??")


# --- sweeps ---

def test_mu_sweep_rows_echo_variable():
    spec = SweepSpec(variable="mu", fixed=FARFIELD_FIXED,
                     schemes=("direct", "reverse"),
                     grid=(1.0, 10.0, 100.0))
    table = run_sweep(spec)
    assert len(table.rows) == 3
    for row, mu in zip(table.rows, (1.0, 10.0, 100.0)):
        assert row.var == mu
        assert row.mu_used == mu
        assert row.flags == ()
        np.testing.assert_allclose(row.eta, 0.0025675349638629957, rtol=1e-12)
        assert row.lb_best == max(0.0, row.lb_direct, row.lb_reverse)
    assert not table.has_errors


def test_sweep_is_thread_deterministic():
    spec = SweepSpec(variable="mu", fixed=FARFIELD_FIXED,
                     grid=tuple(np.logspace(-1, 5, 13)))
    serial = run_sweep(spec, threads=1)
    parallel = run_sweep(spec, threads=4)
    assert serial == parallel


def test_frequency_sweep_flags_farfield_violation():
    fixed = FixedParams(geometry="exclusion_zone", r_a_m=0.05, r_b_m=0.05,
                        r_ex_m=0.05, L_km=100.0, mu=100.0)
    spec = SweepSpec(variable="frequency", fixed=fixed,
                     grid=(1e14, 1e15, 5e15))
    table = run_sweep(spec)
    assert table.has_errors
    good = [r for r in table.rows if not r.flags]
    bad = [r for r in table.rows if r.flags]
    assert len(good) == 2 and len(bad) == 1
    assert bad[0].flags == ("farfield_violation",)
    assert math.isnan(bad[0].lb_best)
    assert bad[0].var == 5e15


def test_unrestricted_sweep_rate_columns_ignore_exclusion_radius():
    fixed = FixedParams(geometry="beam", w0_m=0.05, r_a_m=0.05, r_b_m=0.05,
                        r_e_m=0.05, L_km=30.0, lambda_nm=1550.0, mu=50.0,
                        unrestricted_eve=True)
    spec = SweepSpec(variable="exclusion_radius", fixed=fixed,
                     grid=(0.05, 0.5))
    table = run_sweep(spec)
    first, second = table.rows
    assert first.var != second.var
    assert first.kappa == second.kappa == 1.0
    assert first.lb_direct == second.lb_direct
    assert first.lb_reverse == second.lb_reverse
    assert first.ub == second.ub


def test_optimizing_sweep_marks_unbounded_rows():
    fixed = FixedParams(geometry="exclusion_zone", r_a_m=0.05, r_b_m=0.05,
                        L_km=100.0, lambda_nm=1550.0)
    spec = SweepSpec(variable="exclusion_radius", fixed=fixed,
                     schemes=("reverse",), optimize_mu=True,
                     grid=(0.05, 0.10))
    table = run_sweep(spec)
    assert not table.has_errors  # "unbounded" is informational, not an error
    for row in table.rows:
        assert row.flags == ("unbounded",)
        assert math.isinf(row.mu_used)
        channel = ChannelPoint(row.eta, row.kappa, row.n_e)
        np.testing.assert_allclose(row.lb_reverse,
                                   lb_asymptotic(channel, "reverse"),
                                   rtol=1e-12)
        assert row.ub >= row.lb_best


def test_distance_sweep_monotone_eta():
    fixed = FixedParams(geometry="beam", w0_m=0.05, r_a_m=0.05, r_b_m=0.05,
                        r_e_m=0.05, r_ex_m=0.05, lambda_nm=1550.0, mu=10.0)
    spec = SweepSpec(variable="distance", fixed=fixed,
                     grid=(5.0, 10.0, 20.0, 40.0))
    table = run_sweep(spec)
    etas = [row.eta for row in table.rows]
    assert all(b < a for a, b in zip(etas, etas[1:]))


# --- threading knob ---

def test_thread_count_explicit_and_env(monkeypatch):
    assert thread_count(3) == 3
    monkeypatch.setenv("SKR_THREADS", "5")
    assert thread_count() == 5
    monkeypatch.setenv("SKR_THREADS", "0")
    assert thread_count() >= 1
    monkeypatch.delenv("SKR_THREADS")
    assert thread_count() >= 1
    monkeypatch.setenv("SKR_THREADS", "many")
    with pytest.raises(ValueError, match="SKR_THREADS"):
        thread_count()
