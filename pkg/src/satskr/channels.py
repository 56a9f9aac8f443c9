"""Channel models: geometry in, (eta, kappa, n_e) out.

Two scenarios are covered. The far-field scenario gives Bob a diffraction
transmissivity eta = (omega/omega0)^2 and grants Eve everything lost
outside an exclusion zone of radius r_ex around Bob. The Gaussian-beam
scenario integrates the beam intensity over finite circular apertures,
with Eve's disc offset from the axis (tangential to the zone by default).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from satskr import kernels

__all__ = [
    "SPEED_OF_LIGHT",
    "PLANCK",
    "BOLTZMANN",
    "ExclusionZoneGeometry",
    "BeamGeometry",
    "ChannelPoint",
    "FarFieldViolationError",
    "DegenerateChannelError",
    "QuadratureError",
    "blackbody_ne",
    "farfield_channel",
    "beam_waist_at",
    "p_bob_fraction",
    "p_eve_fraction",
    "beam_channel",
]

SPEED_OF_LIGHT = 3e8  # m/s, consistent with the far-field cutoff formula
PLANCK = 6.626e-34  # J s
BOLTZMANN = 1.38064852e-23  # J/K

# exp argument beyond which the thermal occupation underflows double precision
_UNDERFLOW_ARG = 700.0


class FarFieldViolationError(ValueError):
    """Requested frequency is outside the far-field validity domain.

    Carries ``ratio`` = (omega/omega_cutoff)^2 for the offending aperture
    pair; the transmissivity model is meaningless once this exceeds 1.
    """

    def __init__(self, message: str, ratio: float):
        super().__init__(f"{message} (ratio {ratio:.6g})")
        self.ratio = ratio


class DegenerateChannelError(ValueError):
    """Channel parameters leave Eve's share undefined (no lost power)."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature hit the depth limit before converging.

    ``estimate`` and ``error`` carry the best value achieved.
    """

    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(f"{message} (estimate {estimate!r}, error {error!r})")
        self.estimate = estimate
        self.error = error


@dataclass(frozen=True)
class ExclusionZoneGeometry:
    """Far-field link: Alice/Bob aperture radii, exclusion-zone radius,
    distance. All meters."""

    r_a: float
    r_b: float
    r_ex: float
    L: float

    def __post_init__(self):
        for name in ("r_a", "r_b", "r_ex", "L"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.r_ex < self.r_b:
            raise ValueError(
                "exclusion zone must cover Bob's aperture (r_ex >= r_b)"
            )


@dataclass(frozen=True)
class BeamGeometry:
    """Gaussian-beam link with finite apertures, meters.

    ``eve_offset`` is the center-to-center distance from the beam axis to
    Eve's aperture; ``None`` means tangential to the exclusion zone
    (r_ex + r_e), which is Eve's best allowed position.
    """

    w0: float
    r_a: float
    r_b: float
    r_e: float
    r_ex: float
    L: float
    eve_offset: float | None = None

    def __post_init__(self):
        for name in ("w0", "r_a", "r_b", "r_e", "r_ex"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.L < 0:
            raise ValueError("L must be nonnegative")
        if self.r_ex < self.r_b:
            raise ValueError(
                "exclusion zone must cover Bob's aperture (r_ex >= r_b)"
            )
        if self.eve_offset is None:
            object.__setattr__(self, "eve_offset", self.r_ex + self.r_e)
        if self.eve_offset < self.r_ex + self.r_e - 1e-12:
            raise ValueError(
                "Eve's aperture must stay outside the exclusion zone "
                "(eve_offset >= r_ex + r_e)"
            )


@dataclass(frozen=True)
class ChannelPoint:
    """Channel triple: Bob transmissivity, Eve restriction factor, thermal
    occupation."""

    eta: float
    kappa: float
    n_e: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"eta must be in [0, 1], got {self.eta}")
        if not 0.0 <= self.kappa <= 1.0:
            raise ValueError(f"kappa must be in [0, 1], got {self.kappa}")
        if self.n_e < 0.0:
            raise ValueError(f"n_e must be >= 0, got {self.n_e}")


def blackbody_ne(f: float, T: float) -> float:
    """Mean thermal photon number per mode at frequency ``f`` (Hz) and
    temperature ``T`` (K): 1/(exp(hf/kT) − 1).

    Arguments hf/kT beyond 700 underflow double precision; 0 is returned.
    """
    if f <= 0 or T <= 0:
        raise ValueError("frequency and temperature must be positive")
    x = PLANCK * f / (BOLTZMANN * T)
    if x > _UNDERFLOW_ARG:
        return 0.0
    return 1.0 / math.expm1(x)


def farfield_channel(geom: ExclusionZoneGeometry, omega: float) -> ChannelPoint:
    """Far-field channel point for angular frequency ``omega`` (rad/s).

    eta = (omega/omega0)^2 with omega0 = 2*pi*c*L/sqrt(A_a*A_b); the
    exclusion zone of radius r_ex caps Eve at
    kappa = (1 − eta_ex)/(1 − eta), eta_ex computed like eta with A_ex.
    n_e is not part of the geometry; the returned point carries 0.
    """
    if omega <= 0:
        raise ValueError("omega must be positive")
    area_a = math.pi * geom.r_a**2
    area_b = math.pi * geom.r_b**2
    area_ex = math.pi * geom.r_ex**2
    omega0 = 2.0 * math.pi * SPEED_OF_LIGHT * geom.L / math.sqrt(area_a * area_b)
    omega0_ex = 2.0 * math.pi * SPEED_OF_LIGHT * geom.L / math.sqrt(area_a * area_ex)
    eta = (omega / omega0) ** 2
    eta_ex = (omega / omega0_ex) ** 2
    if eta > 1.0:
        raise FarFieldViolationError(
            "far-field model invalid: omega exceeds the Alice-Bob cutoff", eta
        )
    if eta_ex > 1.0:
        raise FarFieldViolationError(
            "far-field model invalid: omega exceeds the exclusion-zone cutoff",
            eta_ex,
        )
    if eta >= 1.0 - 1e-15:
        raise DegenerateChannelError("no lost power; Eve's share undefined")
    kappa = (1.0 - eta_ex) / (1.0 - eta)
    return ChannelPoint(eta=eta, kappa=min(max(kappa, 0.0), 1.0), n_e=0.0)


def beam_waist_at(w0: float, L: float, wavelength: float) -> float:
    """Gaussian-beam spot radius after propagating a distance L."""
    if w0 <= 0 or L < 0 or wavelength <= 0:
        raise ValueError("beam parameters must be positive")
    z0 = math.pi * w0**2 / wavelength
    return w0 * math.sqrt(1.0 + (L / z0) ** 2)


def _run_quadrature(result, what: str) -> float:
    value, error, converged = result
    if not converged:
        raise QuadratureError(f"{what} quadrature did not converge", value, error)
    return value


def p_bob_fraction(geom: BeamGeometry, wavelength: float) -> float:
    """Fraction of transmitted beam power captured by Bob's centered disc."""
    w = beam_waist_at(geom.w0, geom.L, wavelength)
    frac = _run_quadrature(
        kernels.capture_fraction_centered(geom.r_b, w), "Bob capture"
    )
    return min(max(frac, 0.0), 1.0)


def p_eve_fraction(geom: BeamGeometry, wavelength: float) -> float:
    """Fraction of transmitted beam power captured by Eve's offset disc."""
    w = beam_waist_at(geom.w0, geom.L, wavelength)
    frac = _run_quadrature(
        kernels.capture_fraction_offset(geom.r_e, geom.eve_offset, w),
        "Eve capture",
    )
    return min(max(frac, 0.0), 1.0)


def beam_channel(geom: BeamGeometry, wavelength: float) -> ChannelPoint:
    """Channel point for the Gaussian-beam scenario.

    eta is Bob's capture fraction; kappa is Eve's capture fraction relative
    to everything Bob loses. n_e is not part of the geometry; the returned
    point carries 0.
    """
    eta = p_bob_fraction(geom, wavelength)
    if 1.0 - eta < 1e-15:
        raise DegenerateChannelError("no lost power; Eve's share undefined")
    kappa = p_eve_fraction(geom, wavelength) / (1.0 - eta)
    return ChannelPoint(eta=eta, kappa=min(max(kappa, 0.0), 1.0), n_e=0.0)
