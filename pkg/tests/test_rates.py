"""Rate bounds checked against hand-derived scalar closed forms.

The implementation evaluates entropies on an explicit five-mode
covariance matrix.  Every quantity it needs also has a short closed form
obtainable by tracking variances through the two beamsplitters by hand:

    S(E)      = g(kappa((1-eta)mu + eta n_e))
    S(E|a)    = g(kappa eta n_e)
    S(E|y)    = g((v - 1)/2),
    v = 2kappa((1-eta)mu + eta n_e) + 1
        - 4 eta kappa (1-eta)(mu - n_e)^2 / (2(eta mu + (1-eta) n_e) + 2)

These tests pit the matrix path against those scalars.
"""
import math

import numpy as np
import pytest

from satskr.channels import ChannelPoint
from satskr.gaussian import g_entropy, partial_state, von_neumann_entropy
from satskr.rates import (
    MODE_B,
    MODE_E,
    RateParams,
    lb_asymptotic,
    lb_direct,
    lb_reverse,
    rate_point,
    upper_bound,
    wiretap_state,
)

POINTS = [
    # mu, eta, kappa, n_e, beta
    (5.0, 0.3, 0.7, 0.0, 1.0),
    (5.0, 0.3, 0.7, 1.5, 1.0),
    (100.0, 0.01, 1.0, 0.0, 0.9),
    (0.5, 0.9, 0.2, 3.0, 0.75),
    (1000.0, 0.0025675349638629957, 0.992277567492943, 0.0, 1.0),
    (2.0, 0.6, 1.0, 0.3, 1.0),
]


def closed_direct(mu, eta, kappa, n_e, beta):
    s_eve = g_entropy(kappa * ((1 - eta) * mu + eta * n_e))
    s_eve_cond = g_entropy(kappa * eta * n_e)
    return (beta * g_entropy(n_e * (1 - eta) + eta * mu)
            - s_eve
            - beta * g_entropy(n_e * (1 - eta))
            + s_eve_cond)


def closed_reverse(mu, eta, kappa, n_e, beta):
    s_eve = g_entropy(kappa * ((1 - eta) * mu + eta * n_e))
    v = (2 * kappa * ((1 - eta) * mu + eta * n_e) + 1
         - 4 * eta * kappa * (1 - eta) * (mu - n_e) ** 2
         / (2 * (eta * mu + (1 - eta) * n_e) + 2))
    s_eve_cond = g_entropy((v - 1) / 2)
    x_cond = mu * (1 - eta) * (1 + n_e) / (1 + n_e * (1 - eta) + eta * mu)
    return (beta * g_entropy(mu)
            - s_eve
            - beta * g_entropy(x_cond)
            + s_eve_cond)


@pytest.mark.parametrize("mu,eta,kappa,n_e,beta", POINTS)
def test_direct_matches_closed_form(mu, eta, kappa, n_e, beta):
    params = RateParams(mu=mu, channel=ChannelPoint(eta, kappa, n_e), beta=beta)
    np.testing.assert_allclose(lb_direct(params),
                               closed_direct(mu, eta, kappa, n_e, beta),
                               rtol=1e-9, atol=1e-11)


@pytest.mark.parametrize("mu,eta,kappa,n_e,beta", POINTS)
def test_reverse_matches_closed_form(mu, eta, kappa, n_e, beta):
    params = RateParams(mu=mu, channel=ChannelPoint(eta, kappa, n_e), beta=beta)
    np.testing.assert_allclose(lb_reverse(params),
                               closed_reverse(mu, eta, kappa, n_e, beta),
                               rtol=1e-9, atol=1e-11)


@pytest.mark.parametrize("mu,n_e", [(0.5, 0.0), (3.0, 1.2), (50.0, 0.1)])
def test_wiretap_state_is_pure(mu, n_e):
    state = wiretap_state(mu, ChannelPoint(0.4, 0.6, n_e))
    assert state.n_modes == 5
    assert von_neumann_entropy(state) <= 1e-9


def test_wiretap_state_photon_bookkeeping():
    eta, kappa, n_e, mu = 0.35, 0.8, 2.0, 7.0
    state = wiretap_state(mu, ChannelPoint(eta, kappa, n_e))

    def photons(mode):
        i = 2 * mode
        return (state.cov[i, i] + state.cov[i + 1, i + 1] - 2.0) / 4.0

    np.testing.assert_allclose(photons(MODE_B), eta * mu + (1 - eta) * n_e,
                               rtol=1e-12)
    np.testing.assert_allclose(photons(MODE_E),
                               kappa * ((1 - eta) * mu + eta * n_e),
                               rtol=1e-12)


def test_eve_marginal_is_thermal():
    state = wiretap_state(4.0, ChannelPoint(0.25, 0.5, 1.0))
    eve = partial_state(state, [MODE_E])
    # no squeezing in Eve's mode alone: diagonal covariance
    assert abs(eve.cov[0, 1]) <= 1e-12
    np.testing.assert_allclose(eve.cov[0, 0], eve.cov[1, 1], rtol=1e-12)


def test_zero_input_power_gives_zero_rate():
    params = RateParams(mu=0.0, channel=ChannelPoint(0.3, 0.9, 0.0))
    assert lb_reverse(params) == 0.0
    assert lb_direct(params) == 0.0


def test_noise_models_coincide_without_thermal_noise():
    channel = ChannelPoint(0.2, 0.8, 0.0)
    consistent = RateParams(mu=10.0, channel=channel,
                            eve_noise_model="consistent")
    printed = RateParams(mu=10.0, channel=channel, eve_noise_model="printed")
    assert lb_direct(consistent) == lb_direct(printed)


def test_noise_models_differ_with_thermal_noise():
    channel = ChannelPoint(0.2, 0.8, 2.0)
    consistent = RateParams(mu=10.0, channel=channel,
                            eve_noise_model="consistent")
    printed = RateParams(mu=10.0, channel=channel, eve_noise_model="printed")
    assert lb_direct(consistent) != lb_direct(printed)


def test_rate_increases_with_reconciliation_efficiency():
    channel = ChannelPoint(0.5, 1.0, 0.0)
    low = lb_reverse(RateParams(mu=10.0, channel=channel, beta=0.9))
    high = lb_reverse(RateParams(mu=10.0, channel=channel, beta=1.0))
    assert high > low


def test_reverse_approaches_asymptote_from_below():
    channel = ChannelPoint(0.1, 1.0, 0.0)
    asym = lb_asymptotic(channel, "reverse")
    rates = [lb_reverse(RateParams(mu=m, channel=channel))
             for m in (1e2, 1e4, 1e6)]
    assert all(b > a for a, b in zip(rates, rates[1:]))
    assert rates[-1] < asym
    np.testing.assert_allclose(rates[-1], asym, atol=1e-4)


def test_asymptote_values():
    # eta=0.5, kappa=1: reverse asymptote is exactly 1 bit (the g terms cancel)
    np.testing.assert_allclose(lb_asymptotic(ChannelPoint(0.5, 1.0), "reverse"),
                               1.0, rtol=1e-12)
    # direct asymptote clamps at zero when Eve's share beats Bob's
    assert lb_asymptotic(ChannelPoint(0.01, 1.0), "direct") == 0.0
    np.testing.assert_allclose(
        lb_asymptotic(ChannelPoint(0.5, 0.25), "direct"),
        math.log2(0.5 / (0.25 * 0.5)), rtol=1e-12)


def test_asymptote_domain():
    with pytest.raises(ValueError):
        lb_asymptotic(ChannelPoint(0.0, 1.0), "reverse")
    with pytest.raises(ValueError):
        lb_asymptotic(ChannelPoint(1.0, 1.0), "reverse")
    with pytest.raises(ValueError):
        lb_asymptotic(ChannelPoint(0.5, 0.0), "direct")
    with pytest.raises(ValueError):
        lb_asymptotic(ChannelPoint(0.5, 1.0), "sideways")


def test_upper_bound():
    np.testing.assert_allclose(upper_bound(ChannelPoint(0.5, 0.5)),
                               -math.log2(0.25), rtol=1e-12)
    assert upper_bound(ChannelPoint(0.5, 0.0)) == math.inf
    with pytest.raises(ValueError):
        upper_bound(ChannelPoint(0.0, 1.0))


def test_rate_point_bundles_consistently():
    result = rate_point(RateParams(mu=5.0, channel=ChannelPoint(0.3, 0.7, 0.0)))
    assert result.lb_best == max(0.0, result.lb_direct, result.lb_reverse)
    assert result.lb_best >= 0.0
    assert not result.diverged
    diverged = rate_point(RateParams(mu=5.0, channel=ChannelPoint(0.3, 0.0)))
    assert diverged.diverged and math.isinf(diverged.ub)


def test_rate_params_validation():
    channel = ChannelPoint(0.3, 0.7, 0.0)
    with pytest.raises(ValueError):
        RateParams(mu=-1.0, channel=channel)
    with pytest.raises(ValueError):
        RateParams(mu=1.0, channel=channel, beta=0.0)
    with pytest.raises(ValueError):
        RateParams(mu=1.0, channel=channel, beta=1.1)
    with pytest.raises(ValueError):
        RateParams(mu=1.0, channel=channel, eve_noise_model="loud")
