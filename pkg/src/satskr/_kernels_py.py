"""Pure-Python scalar kernels: entropy weight and beam-overlap quadrature.

This is the reference implementation; ``satskr._ckernels`` is a compiled
twin with the same signatures and the same arithmetic, selected at import
by :mod:`satskr.kernels`.
"""
from __future__ import annotations

import math

BACKEND = "python"

MAX_DEPTH = 60

_LN2 = math.log(2.0)

# 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1].
# Nonnegative abscissae; odd indices are the shared Gauss nodes.
_XGK = (
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
)
_WGK = (
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
)
_WG = (
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
)


def g_entropy_raw(x: float) -> float:
    """Entropy of a thermal mode with mean photon number x, in bits:
    (x+1)log2(x+1) - x*log2(x), evaluated as x*log2(1+1/x) + log2(x+1) so
    that large x does not cancel two huge terms against each other.

    No domain checking here; callers clamp/validate first.
    """
    if x <= 0.0:
        return 0.0
    return x * math.log1p(1.0 / x) / _LN2 + math.log2(x + 1.0)


def _bob_integrand(y: float, r2: float, w: float) -> float:
    t = r2 - y * y
    half_chord = math.sqrt(t) if t > 0.0 else 0.0
    return math.exp(-2.0 * y * y / (w * w)) * math.erf(
        math.sqrt(2.0) * half_chord / w
    )


def _eve_integrand(x: float, r2: float, c: float, w: float) -> float:
    t = r2 - x * x
    b = math.sqrt(t) if t > 0.0 else 0.0
    s = math.sqrt(2.0) / w
    return math.exp(-2.0 * x * x / (w * w)) * (
        math.erf(s * (c + b)) - math.erf(s * (c - b))
    )


def _gk15(kind: int, a: float, b: float, r2: float, c: float, w: float):
    """One Kronrod/Gauss panel; returns (15-point value, 7-point value)."""
    mid = 0.5 * (a + b)
    h = 0.5 * (b - a)
    if kind == 0:
        fc = _bob_integrand(mid, r2, w)
    else:
        fc = _eve_integrand(mid, r2, c, w)
    sk = _WGK[7] * fc
    sg = _WG[3] * fc
    for j in range(7):
        dx = h * _XGK[j]
        if kind == 0:
            f1 = _bob_integrand(mid - dx, r2, w)
            f2 = _bob_integrand(mid + dx, r2, w)
        else:
            f1 = _eve_integrand(mid - dx, r2, c, w)
            f2 = _eve_integrand(mid + dx, r2, c, w)
        fsum = f1 + f2
        sk += _WGK[j] * fsum
        if j & 1:
            sg += _WG[j >> 1] * fsum
    return h * sk, h * sg


def _adapt(kind: int, a: float, b: float, tol: float, depth: int, r2: float,
           c: float, w: float):
    vk, vg = _gk15(kind, a, b, r2, c, w)
    err = abs(vk - vg)
    if err <= tol or depth >= MAX_DEPTH:
        return vk, err, err <= tol
    mid = 0.5 * (a + b)
    v1, e1, ok1 = _adapt(kind, a, mid, 0.5 * tol, depth + 1, r2, c, w)
    v2, e2, ok2 = _adapt(kind, mid, b, 0.5 * tol, depth + 1, r2, c, w)
    return v1 + v2, e1 + e2, ok1 and ok2


def capture_fraction_centered(radius: float, w: float, tol: float = 1e-10):
    """Fraction of total beam power collected by a disc of ``radius`` centered
    on the beam axis, for spot size ``w``.

    Returns ``(value, abs_error_estimate, converged)``.
    """
    if radius <= 0.0:
        return 0.0, 0.0, True
    pref = 2.0 * math.sqrt(2.0 / math.pi) / w
    val, err, ok = _adapt(0, 0.0, radius, tol / pref, 0, radius * radius,
                          0.0, w)
    return pref * val, pref * err, ok


def capture_fraction_offset(radius: float, offset: float, w: float,
                            tol: float = 1e-10):
    """Fraction of total beam power collected by a disc of ``radius`` whose
    center sits ``offset`` away from the beam axis, for spot size ``w``.

    Returns ``(value, abs_error_estimate, converged)``.
    """
    if radius <= 0.0:
        return 0.0, 0.0, True
    pref = 2.0 / (w * math.sqrt(2.0 * math.pi))
    val, err, ok = _adapt(1, 0.0, radius, tol / pref, 0, radius * radius,
                          offset, w)
    return pref * val, pref * err, ok
