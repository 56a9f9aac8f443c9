"""Secret-key-rate lower and upper bounds for the restricted-eavesdropper
lossy channel.

The channel is realized as an explicit five-mode purification: a TMSV
source (retained mode A, signal mode), the signal mixed at transmissivity
eta with a thermal environment purified by F', and the lost light tapped by
Eve at transmissivity kappa against vacuum (her port E; the untapped rest
is G). Both reconciliation directions are entropy differences evaluated on
that state; Eve's system is her single tapped mode.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from satskr.channels import ChannelPoint
from satskr.gaussian import (
    GaussianState,
    beamsplitter,
    g_entropy,
    heterodyne_condition,
    partial_state,
    tensor,
    tmsv_state,
    vacuum_state,
    von_neumann_entropy,
)

__all__ = [
    "MODE_A",
    "MODE_B",
    "MODE_E",
    "MODE_F",
    "MODE_G",
    "RateParams",
    "RateResult",
    "wiretap_state",
    "lb_direct",
    "lb_reverse",
    "lb_asymptotic",
    "upper_bound",
    "rate_point",
]

# Mode layout of wiretap_state
MODE_A = 0  # Alice's retained TMSV arm
MODE_B = 1  # Bob's received mode
MODE_E = 2  # Eve's tapped mode
MODE_F = 3  # thermal-environment purifier
MODE_G = 4  # lost light Eve does not collect

EVE_NOISE_MODELS = ("consistent", "printed")


@dataclass(frozen=True)
class RateParams:
    """Inputs of one rate evaluation."""

    mu: float
    channel: ChannelPoint
    beta: float = 1.0
    eve_noise_model: str = "consistent"

    def __post_init__(self):
        if self.mu < 0:
            raise ValueError(f"mu must be >= 0, got {self.mu}")
        if not 0.0 < self.beta <= 1.0:
            raise ValueError(f"beta must be in (0, 1], got {self.beta}")
        if self.eve_noise_model not in EVE_NOISE_MODELS:
            raise ValueError(
                f"eve_noise_model must be one of {EVE_NOISE_MODELS}, "
                f"got {self.eve_noise_model!r}"
            )


@dataclass(frozen=True)
class RateResult:
    """Bounds at one operating point, bits per mode.

    lb_direct/lb_reverse are raw (possibly negative); lb_best is clamped at
    zero. ``diverged`` marks an infinite upper bound (kappa → 0).
    """

    lb_direct: float
    lb_reverse: float
    lb_best: float
    ub: float | None
    diverged: bool


def wiretap_state(mu: float, channel: ChannelPoint) -> GaussianState:
    """Five-mode pure state realizing the restricted-eavesdropper channel.

    Mode order: A (retained), B (Bob), E (Eve), F' (thermal purifier),
    G (uncollected loss). See the module docstring for the construction.
    """
    if mu < 0:
        raise ValueError(f"mu must be >= 0, got {mu}")
    # modes at build time: A=0, signal=1, thermal=2, purifier=3, vacuum=4
    state = tensor(tensor(tmsv_state(mu), tmsv_state(channel.n_e)),
                   vacuum_state(1))
    state = beamsplitter(state, 1, 2, channel.eta)   # signal port -> B
    state = beamsplitter(state, 2, 4, channel.kappa)  # loss port -> E
    return state


def _eve_entropy(state: GaussianState) -> float:
    return von_neumann_entropy(partial_state(state, [MODE_E]))


def _eve_conditional_entropy(state: GaussianState, measured: int) -> float:
    """Entropy of Eve's mode after heterodyne on ``measured``.

    Conditioning commutes with discarding uninvolved modes, so the Schur
    complement is taken on the (E, measured) pair only.
    """
    pair = partial_state(state, [MODE_E, measured])
    return von_neumann_entropy(heterodyne_condition(pair, measured=1))


def lb_direct(params: RateParams) -> float:
    """Direct-reconciliation lower bound, bits per mode (raw, unclamped).

    beta·g(n_e(1−eta)+eta·mu) − S(E) − beta·g(n_e(1−eta)) + S(E|a), with
    S(E|a) from heterodyne conditioning on the retained mode
    (eve_noise_model="consistent") or the literal scalar g(n_e(1−eta·kappa))
    ("printed"). The two coincide at n_e = 0.
    """
    eta, kappa, n_e = params.channel.eta, params.channel.kappa, params.channel.n_e
    state = wiretap_state(params.mu, params.channel)
    s_eve = _eve_entropy(state)
    if params.eve_noise_model == "printed":
        s_eve_cond = g_entropy(n_e * (1.0 - eta * kappa))
    else:
        s_eve_cond = _eve_conditional_entropy(state, MODE_A)
    return (
        params.beta * g_entropy(n_e * (1.0 - eta) + eta * params.mu)
        - s_eve
        - params.beta * g_entropy(n_e * (1.0 - eta))
        + s_eve_cond
    )


def lb_reverse(params: RateParams) -> float:
    """Reverse-reconciliation lower bound, bits per mode (raw, unclamped).

    beta·g(mu) − S(E) − beta·g(x) + S(E|y), where x is Alice's mode photon
    number conditioned on Bob's heterodyne outcome,
    x = mu(1−eta)(1+n_e)/(1 + n_e(1−eta) + eta·mu), and S(E|y) comes from
    heterodyne conditioning on Bob's mode.
    """
    eta, n_e = params.channel.eta, params.channel.n_e
    mu = params.mu
    state = wiretap_state(mu, params.channel)
    s_eve = _eve_entropy(state)
    s_eve_cond = _eve_conditional_entropy(state, MODE_B)
    x_cond = mu * (1.0 - eta) * (1.0 + n_e) / (1.0 + n_e * (1.0 - eta) + eta * mu)
    return (
        params.beta * g_entropy(mu)
        - s_eve
        - params.beta * g_entropy(x_cond)
        + s_eve_cond
    )


def lb_asymptotic(channel: ChannelPoint, scheme: str) -> float:
    """Large-input-power limit of the lower bounds at beta=1, n_e=0.

    direct: log2(eta/(kappa(1−eta))), clamped at 0 when negative;
    reverse: log2(1/(kappa(1−eta))) − [g((1−eta)/eta) − g((1−eta)kappa/eta)].
    """
    eta, kappa = channel.eta, channel.kappa
    if not 0.0 < eta < 1.0:
        raise ValueError(f"asymptote needs 0 < eta < 1, got {eta}")
    if not 0.0 < kappa <= 1.0:
        raise ValueError(f"asymptote needs 0 < kappa <= 1, got {kappa}")
    if scheme == "direct":
        return max(0.0, math.log2(eta / (kappa * (1.0 - eta))))
    if scheme == "reverse":
        loss_ratio = (1.0 - eta) / eta
        return (
            -math.log2(kappa * (1.0 - eta))
            - g_entropy(loss_ratio)
            + g_entropy(kappa * loss_ratio)
        )
    raise ValueError(f"scheme must be 'direct' or 'reverse', got {scheme!r}")


def upper_bound(channel: ChannelPoint) -> float:
    """Pure-loss restricted-Eve upper-bound surrogate −log2(kappa(1−eta)).

    Eve can ever touch at most the fraction kappa(1−eta) of the light; the
    bound is infinite (math.inf) when that fraction is 0.
    """
    share = channel.kappa * (1.0 - channel.eta)
    if share >= 1.0:
        raise ValueError(
            f"Eve's reachable share must be < 1 for a finite bound, got {share}"
        )
    if share == 0.0:
        return math.inf
    return -math.log2(share)


def rate_point(params: RateParams) -> RateResult:
    """Bundle of both lower bounds, the clamped best, and the upper bound."""
    direct = lb_direct(params)
    reverse = lb_reverse(params)
    ub = upper_bound(params.channel)
    return RateResult(
        lb_direct=direct,
        lb_reverse=reverse,
        lb_best=max(0.0, direct, reverse),
        ub=ub,
        diverged=math.isinf(ub),
    )
