"""Gaussian-state primitives in shot-noise units.

Covariance matrices use quadrature ordering x1,p1,x2,p2,... with vacuum
variance 1, so a thermal mode with mean photon number n has variance 2n+1
and every entropy reads directly as g((nu-1)/2) over the symplectic
spectrum. All states are zero-mean; means are carried but never used.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from satskr.kernels import g_entropy_raw

__all__ = [
    "GaussianState",
    "ConditioningError",
    "g_entropy",
    "vacuum_state",
    "thermal_state",
    "tmsv_state",
    "tensor",
    "beamsplitter",
    "partial_state",
    "symplectic_eigenvalues",
    "von_neumann_entropy",
    "heterodyne_condition",
]

# Relative symmetry tolerance for accepting a covariance matrix.
_SYM_RTOL = 1e-12

# Physicality slack on symplectic eigenvalues.
_PHYS_TOL = 1e-9


class ConditioningError(RuntimeError):
    """Measurement conditioning hit a (numerically) singular block."""


def g_entropy(x: float) -> float:
    """Entropy of a bosonic thermal state with mean photon number ``x``, bits.

    (x+1)·log2(x+1) − x·log2(x), with g(0) = 0 by the x·log2(x) → 0 limit.
    Tiny negatives from roundoff (≥ −1e-12) clamp to 0.
    """
    if x < -1e-12:
        raise ValueError(f"mean photon number must be >= 0, got {x}")
    return g_entropy_raw(float(x))


@dataclass(frozen=True)
class GaussianState:
    """Zero-mean Gaussian state: mode count plus covariance matrix."""

    n_modes: int
    cov: np.ndarray
    mean: np.ndarray = field(default=None, repr=False)  # type: ignore[assignment]

    def __post_init__(self):
        cov = np.asarray(self.cov, dtype=float)
        dim = 2 * self.n_modes
        if self.n_modes < 1:
            raise ValueError("need at least one mode")
        if cov.shape != (dim, dim):
            raise ValueError(
                f"covariance shape {cov.shape} does not match {self.n_modes} modes"
            )
        scale = max(float(np.max(np.abs(cov))), 1.0)
        if float(np.max(np.abs(cov - cov.T))) > _SYM_RTOL * scale:
            raise ValueError("covariance matrix is not symmetric within tolerance")
        cov = 0.5 * (cov + cov.T)
        cov.flags.writeable = False
        object.__setattr__(self, "cov", cov)
        mean = np.zeros(dim) if self.mean is None else np.asarray(self.mean, float)
        mean.flags.writeable = False
        object.__setattr__(self, "mean", mean)

    def is_physical(self, tol: float = _PHYS_TOL) -> bool:
        """True when every symplectic eigenvalue is ≥ 1 − tol."""
        return bool(_raw_symplectic_spectrum(self.cov).min() >= 1.0 - tol)


def _omega(n_modes: int) -> np.ndarray:
    """Symplectic form for n modes in x1,p1,... ordering."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def vacuum_state(n_modes: int = 1) -> GaussianState:
    """n-mode vacuum: identity covariance."""
    return GaussianState(n_modes, np.eye(2 * n_modes))


def thermal_state(n: float) -> GaussianState:
    """Single thermal mode with mean photon number ``n``: cov (2n+1)·I."""
    if n < 0:
        raise ValueError(f"mean photon number must be >= 0, got {n}")
    return GaussianState(1, (2.0 * n + 1.0) * np.eye(2))


def tmsv_state(mu: float) -> GaussianState:
    """Two-mode squeezed vacuum with mean photon number ``mu`` per mode.

    Diagonal blocks (2μ+1)·I2; off-diagonal 2√(μ(μ+1))·diag(1,−1). Pure for
    every μ; each reduction is thermal with variance 2μ+1.
    """
    if mu < 0:
        raise ValueError(f"mean photon number must be >= 0, got {mu}")
    v = 2.0 * mu + 1.0
    c = 2.0 * np.sqrt(mu * (mu + 1.0))
    cov = np.eye(4) * v
    cov[0, 2] = cov[2, 0] = c
    cov[1, 3] = cov[3, 1] = -c
    return GaussianState(2, cov)


def tensor(a: GaussianState, b: GaussianState) -> GaussianState:
    """Product state of two registers (block-diagonal covariance)."""
    n = a.n_modes + b.n_modes
    cov = np.zeros((2 * n, 2 * n))
    cov[: 2 * a.n_modes, : 2 * a.n_modes] = a.cov
    cov[2 * a.n_modes :, 2 * a.n_modes :] = b.cov
    return GaussianState(n, cov)


def beamsplitter(state: GaussianState, mode_a: int, mode_b: int,
                 tau: float) -> GaussianState:
    """Mix two modes on a beamsplitter of transmissivity ``tau``.

    The transmitted port (mode_a) carries √τ·a + √(1−τ)·b; the reflected
    port carries −√(1−τ)·a + √τ·b. Orthogonal symplectic, so symmetry,
    physicality and total photon number are preserved.
    """
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"transmissivity must be in [0, 1], got {tau}")
    n = state.n_modes
    if mode_a == mode_b:
        raise ValueError("beamsplitter needs two distinct modes")
    for m in (mode_a, mode_b):
        if not 0 <= m < n:
            raise ValueError(f"mode index {m} out of range for {n} modes")
    t = np.sqrt(tau)
    r = np.sqrt(1.0 - tau)
    s = np.eye(2 * n)
    ia, ib = 2 * mode_a, 2 * mode_b
    for k in (0, 1):
        s[ia + k, ia + k] = t
        s[ib + k, ib + k] = t
        s[ia + k, ib + k] = r
        s[ib + k, ia + k] = -r
    return GaussianState(n, s @ state.cov @ s.T)


def partial_state(state: GaussianState, keep) -> GaussianState:
    """Reduced state on the given mode indices, in the order given."""
    keep = list(keep)
    if not keep:
        raise ValueError("must keep at least one mode")
    if len(set(keep)) != len(keep):
        raise ValueError("duplicate mode index in keep list")
    for m in keep:
        if not 0 <= m < state.n_modes:
            raise ValueError(f"mode index {m} out of range")
    idx = [2 * m + k for m in keep for k in (0, 1)]
    return GaussianState(len(keep), state.cov[np.ix_(idx, idx)])


def _raw_symplectic_spectrum(cov: np.ndarray) -> np.ndarray:
    """Unclamped symplectic eigenvalues, descending."""
    n = cov.shape[0] // 2
    ev = np.linalg.eigvals(_omega(n) @ cov)
    nus = np.sort(np.abs(ev.imag))[::-1]
    # eigenvalues come in ±iν pairs; keep one of each
    return nus[::2]


def symplectic_eigenvalues(state: GaussianState) -> np.ndarray:
    """Symplectic spectrum: |eigenvalues of iΩσ| deduplicated to one value
    per mode, descending, clamped at 1 (roundoff below 1 is unphysical).
    """
    nus = _raw_symplectic_spectrum(state.cov)
    return np.maximum(nus, 1.0)


def von_neumann_entropy(state: GaussianState) -> float:
    """Von Neumann entropy in bits: Σ g((ν_i − 1)/2)."""
    total = 0.0
    for nu in symplectic_eigenvalues(state):
        total += g_entropy_raw((nu - 1.0) / 2.0)
    return total


def heterodyne_condition(state: GaussianState, measured: int) -> GaussianState:
    """State of the unmeasured modes after a heterodyne detection on
    ``measured``.

    Gaussian conditioning is outcome-independent, so the single Schur
    complement σ_A − σ_AB (σ_B + I)⁻¹ σ_BA represents the average
    conditional state.
    """
    n = state.n_modes
    if n < 2:
        raise ValueError("need at least two modes to condition")
    if not 0 <= measured < n:
        raise ValueError(f"mode index {measured} out of range")
    keep = [m for m in range(n) if m != measured]
    idx_a = [2 * m + k for m in keep for k in (0, 1)]
    idx_b = [2 * measured, 2 * measured + 1]
    sig_a = state.cov[np.ix_(idx_a, idx_a)]
    sig_ab = state.cov[np.ix_(idx_a, idx_b)]
    sig_b = state.cov[np.ix_(idx_b, idx_b)] + np.eye(2)
    det = sig_b[0, 0] * sig_b[1, 1] - sig_b[0, 1] * sig_b[1, 0]
    if abs(det) < 1e-300:
        raise ConditioningError("measured block is numerically singular")
    inv_b = np.array([[sig_b[1, 1], -sig_b[0, 1]],
                      [-sig_b[1, 0], sig_b[0, 0]]]) / det
    cond = sig_a - sig_ab @ inv_b @ sig_ab.T
    return GaussianState(n - 1, 0.5 * (cond + cond.T))
