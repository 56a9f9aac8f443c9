# cython: language_level=3, boundscheck=False, cdivision=True
"""Compiled scalar kernels; arithmetic mirrors ``satskr._kernels_py``."""

from libc.math cimport erf, exp, log, log1p, log2, sqrt, fabs

BACKEND = "compiled"

DEF MAX_DEPTH_C = 60
MAX_DEPTH = MAX_DEPTH_C

cdef double[8] _XGK = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
]
cdef double[8] _WGK = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
]
cdef double[4] _WG = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
]

# pi to full double precision, matching math.pi
cdef double PI = 3.141592653589793


cdef double LN2 = log(2.0)


def g_entropy_raw(double x):
    """Entropy of a thermal mode with mean photon number x, in bits:
    (x+1)log2(x+1) - x*log2(x), in the cancellation-free large-x form."""
    if x <= 0.0:
        return 0.0
    return x * log1p(1.0 / x) / LN2 + log2(x + 1.0)


cdef inline double _bob_integrand(double y, double r2, double w) nogil:
    cdef double t = r2 - y * y
    cdef double half_chord = sqrt(t) if t > 0.0 else 0.0
    return exp(-2.0 * y * y / (w * w)) * erf(sqrt(2.0) * half_chord / w)


cdef inline double _eve_integrand(double x, double r2, double c,
                                  double w) nogil:
    cdef double t = r2 - x * x
    cdef double b = sqrt(t) if t > 0.0 else 0.0
    cdef double s = sqrt(2.0) / w
    return exp(-2.0 * x * x / (w * w)) * (erf(s * (c + b)) - erf(s * (c - b)))


cdef void _gk15(int kind, double a, double b, double r2, double c, double w,
                double* out_k, double* out_g) nogil:
    cdef double mid = 0.5 * (a + b)
    cdef double h = 0.5 * (b - a)
    cdef double fc, f1, f2, fsum, dx
    cdef double sk, sg
    cdef int j
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
    out_k[0] = h * sk
    out_g[0] = h * sg


cdef void _adapt(int kind, double a, double b, double tol, int depth,
                 double r2, double c, double w,
                 double* out_val, double* out_err, bint* out_ok) nogil:
    cdef double vk = 0.0, vg = 0.0
    cdef double err, mid
    cdef double v1, e1, v2, e2
    cdef bint ok1, ok2
    _gk15(kind, a, b, r2, c, w, &vk, &vg)
    err = fabs(vk - vg)
    if err <= tol or depth >= MAX_DEPTH_C:
        out_val[0] = vk
        out_err[0] = err
        out_ok[0] = err <= tol
        return
    mid = 0.5 * (a + b)
    _adapt(kind, a, mid, 0.5 * tol, depth + 1, r2, c, w, &v1, &e1, &ok1)
    _adapt(kind, mid, b, 0.5 * tol, depth + 1, r2, c, w, &v2, &e2, &ok2)
    out_val[0] = v1 + v2
    out_err[0] = e1 + e2
    out_ok[0] = ok1 and ok2


def capture_fraction_centered(double radius, double w, double tol=1e-10):
    """Fraction of total beam power collected by a disc of ``radius`` centered
    on the beam axis, for spot size ``w``.

    Returns ``(value, abs_error_estimate, converged)``.
    """
    cdef double val, err, pref
    cdef bint ok
    if radius <= 0.0:
        return 0.0, 0.0, True
    pref = 2.0 * sqrt(2.0 / PI) / w
    _adapt(0, 0.0, radius, tol / pref, 0, radius * radius, 0.0, w,
           &val, &err, &ok)
    return pref * val, pref * err, bool(ok)


def capture_fraction_offset(double radius, double offset, double w,
                            double tol=1e-10):
    """Fraction of total beam power collected by a disc of ``radius`` whose
    center sits ``offset`` away from the beam axis, for spot size ``w``.

    Returns ``(value, abs_error_estimate, converged)``.
    """
    cdef double val, err, pref
    cdef bint ok
    if radius <= 0.0:
        return 0.0, 0.0, True
    pref = 2.0 / (w * sqrt(2.0 * PI))
    _adapt(1, 0.0, radius, tol / pref, 0, radius * radius, offset, w,
           &val, &err, &ok)
    return pref * val, pref * err, bool(ok)
