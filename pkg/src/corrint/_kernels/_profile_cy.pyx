# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled backend for the corrugation-profile kernels.

Same contracts as _profile_np (which also supplies the shared tables, so the
two backends agree on mu, the Newton seed cache and the s = 0 derivative
limit); the loops here run per element in C with Kahan-summed quadrature.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, sqrt, fabs, fmod

cnp.import_array()

from . import _profile_np as _ref

DEF NQ = 256
DEF GL = 20

cdef double TWO_PI = 6.283185307179586476925286766559
cdef double[NQ] SIN_T
cdef double[NQ] COS_2T
cdef double[GL] GL_X01
cdef double[GL] GL_W01
cdef double MU = 0.0
cdef double FPRIME0 = 0.0
cdef double SERIES_S = 0.01
cdef double QUAD_TOL = 5.0e-13

_tb = _ref._get_tables()
assert _tb.n_quad == NQ
cdef int _i
for _i in range(NQ):
    SIN_T[_i] = _tb.sin_t[_i]
    COS_2T[_i] = _tb.cos_2t[_i]
for _i in range(GL):
    GL_X01[_i] = _tb.gl_x01[_i]
    GL_W01[_i] = _tb.gl_w01[_i]
MU = _tb.mu
FPRIME0 = _tb.fprime0

_CACHE_S = np.ascontiguousarray(_tb.cache_s)
_CACHE_F = np.ascontiguousarray(_tb.cache_f)
cdef double[::1] CACHE_S = _CACHE_S
cdef double[::1] CACHE_F = _CACHE_F
cdef Py_ssize_t NCACHE = CACHE_S.shape[0]


cdef inline double _j0(double x) nogil:
    cdef double acc = 0.0, comp = 0.0, y, t
    cdef int i
    for i in range(NQ):
        y = cos(x * SIN_T[i]) - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
    return acc / NQ


cdef inline double _j1(double x) nogil:
    cdef double acc = 0.0, comp = 0.0, y, t
    cdef int i
    for i in range(NQ):
        y = sin(x * SIN_T[i]) * SIN_T[i] - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
    return acc / NQ


cdef inline double _j2(double x) nogil:
    cdef double acc = 0.0, comp = 0.0, y, t
    cdef int i
    for i in range(NQ):
        y = cos(x * SIN_T[i]) * COS_2T[i] - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
    return acc / NQ


cdef inline double _f_series(double s) nogil:
    cdef double s2 = s * s
    return 1.4142135623730951 * s * (1.0 - 0.3125 * s2 + (839.0 / 4608.0) * s2 * s2)


cdef double _invert(double sa) nogil:
    """f(|s|) for sa > SERIES_S: safeguarded Newton on [0, mu]."""
    cdef double w = 1.0 / sqrt(1.0 + sa * sa)
    cdef double lo = 0.0, hi = MU
    cdef double tol = 1e-13 * w
    if tol < 5e-16:
        tol = 5e-16
    # seed from the monotone cache (binary search)
    cdef Py_ssize_t a = 0, b = NCACHE - 1, m
    while b - a > 1:
        m = (a + b) >> 1
        if CACHE_S[m] < sa:
            a = m
        else:
            b = m
    cdef double x = CACHE_F[b]
    if x <= 0.0:
        x = 1e-18
    if x >= MU:
        x = MU * (1.0 - 1e-14)
    cdef double r, j1v, xn
    cdef int it
    for it in range(60):
        r = _j0(x) - w
        if fabs(r) <= tol:
            break
        if r > 0.0:
            lo = x
        else:
            hi = x
        j1v = _j1(x)
        if j1v > 1e-300:
            xn = x + r / j1v
        else:
            xn = 0.5 * (lo + hi)
        if xn <= lo or xn >= hi or xn != xn:
            xn = 0.5 * (lo + hi)
        x = xn
    return x


cdef inline double _fval(double s) nogil:
    cdef double sa = fabs(s)
    cdef double f
    if sa == 0.0:
        return 0.0
    if sa <= SERIES_S:
        f = _f_series(sa)
    else:
        f = _invert(sa)
    if s < 0.0:
        return -f
    return f


cdef inline double _fprime(double s, double f) nogil:
    cdef double c
    if s == 0.0:
        return FPRIME0
    c = 1.0 + s * s
    return s / (_j1(f) * c * sqrt(c))


cdef void _gl_pair(double s, double f, double tr, int panels, bint d_ds,
                   double fprime, double* out1, double* out2) nogil:
    cdef double c = sqrt(1.0 + s * s)
    cdef double g1 = 0.0, g2 = 0.0
    cdef double u, ph, w, su, a, b
    cdef int p, k
    a = s / c
    for p in range(panels):
        for k in range(GL):
            u = tr * (p + GL_X01[k]) / panels
            w = GL_W01[k] / panels
            ph = f * sin(u)
            if not d_ds:
                g1 += w * (c * cos(ph) - 1.0)
                g2 += w * (c * sin(ph))
            else:
                su = sin(u)
                b = c * fprime * su
                g1 += w * (a * cos(ph) - b * sin(ph))
                g2 += w * (a * sin(ph) + b * cos(ph))
    out1[0] = tr * g1
    out2[0] = tr * g2


cdef void _gamma_point(double s, double f, double tr, bint d_ds, double fprime,
                       double* out1, double* out2) nogil:
    cdef double a1, a2, b1, b2, err
    cdef int panels = 4, lev
    if tr == 0.0 or (s == 0.0 and not d_ds):
        out1[0] = 0.0
        out2[0] = 0.0
        return
    _gl_pair(s, f, tr, panels, d_ds, fprime, &a1, &a2)
    for lev in range(4):
        _gl_pair(s, f, tr, 2 * panels, d_ds, fprime, &b1, &b2)
        err = fabs(b1 - a1)
        if fabs(b2 - a2) > err:
            err = fabs(b2 - a2)
        a1 = b1
        a2 = b2
        panels *= 2
        if err <= QUAD_TOL:
            break
    out1[0] = a1
    out2[0] = a2


cdef inline double _mod2pi(double t) nogil:
    cdef double tr = fmod(t, TWO_PI)
    if tr < 0.0:
        tr += TWO_PI
    return tr


def bessel_j(int order, x, n_quad=None):
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0, 1 or 2, got {order}")
    if n_quad is not None:
        return _ref.bessel_j(order, x, n_quad)
    arr = np.asarray(x, dtype=np.float64)
    scalar = arr.ndim == 0
    flat = np.ascontiguousarray(np.atleast_1d(arr).ravel())
    out = np.empty_like(flat)
    cdef double[::1] xv = flat
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = xv.shape[0]
    with nogil:
        for i in range(n):
            if order == 0:
                ov[i] = _j0(xv[i])
            elif order == 1:
                ov[i] = _j1(xv[i])
            else:
                ov[i] = _j2(xv[i])
    return float(out[0]) if scalar else out.reshape(arr.shape)


def first_j0_zero():
    return MU


def profile_f(s):
    arr = np.asarray(s, dtype=np.float64)
    scalar = arr.ndim == 0
    flat = np.ascontiguousarray(np.atleast_1d(arr).ravel())
    out = np.empty_like(flat)
    cdef double[::1] sv = flat
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = sv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _fval(sv[i])
    return float(out[0]) if scalar else out.reshape(arr.shape)


def profile_f_prime(s):
    arr = np.asarray(s, dtype=np.float64)
    scalar = arr.ndim == 0
    flat = np.ascontiguousarray(np.atleast_1d(arr).ravel())
    out = np.empty_like(flat)
    cdef double[::1] sv = flat
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = sv.shape[0]
    cdef double f
    with nogil:
        for i in range(n):
            f = _fval(sv[i])
            ov[i] = _fprime(sv[i], f)
    return float(out[0]) if scalar else out.reshape(arr.shape)


cdef tuple _pair_op(s, t, bint reduce_t, bint d_ds):
    sa = np.asarray(s, dtype=np.float64)
    ta = np.asarray(t, dtype=np.float64)
    sb, tb = np.broadcast_arrays(sa, ta)
    shape = sb.shape
    scalar = sb.ndim == 0
    sflat = np.ascontiguousarray(np.atleast_1d(sb).ravel(), dtype=np.float64)
    tflat = np.ascontiguousarray(np.atleast_1d(tb).ravel(), dtype=np.float64)
    o1 = np.empty_like(sflat)
    o2 = np.empty_like(sflat)
    cdef double[::1] sv = sflat
    cdef double[::1] tv = tflat
    cdef double[::1] v1 = o1
    cdef double[::1] v2 = o2
    cdef Py_ssize_t i, n = sv.shape[0]
    cdef double f, fp, tr
    with nogil:
        for i in range(n):
            f = _fval(sv[i])
            fp = _fprime(sv[i], f) if d_ds else 0.0
            tr = _mod2pi(tv[i]) if reduce_t else tv[i]
            _gamma_point(sv[i], f, tr, d_ds, fp, &v1[i], &v2[i])
    if scalar:
        return float(o1[0]), float(o2[0])
    return o1.reshape(shape), o2.reshape(shape)


def gamma(s, t, reduce=True):
    return _pair_op(s, t, bool(reduce), False)


def gamma_ds(s, t, reduce=True):
    return _pair_op(s, t, bool(reduce), True)


def gamma_dt(s, t):
    sa = np.asarray(s, dtype=np.float64)
    ta = np.asarray(t, dtype=np.float64)
    sb, tb = np.broadcast_arrays(sa, ta)
    shape = sb.shape
    scalar = sb.ndim == 0
    sflat = np.ascontiguousarray(np.atleast_1d(sb).ravel(), dtype=np.float64)
    tflat = np.ascontiguousarray(np.atleast_1d(tb).ravel(), dtype=np.float64)
    o1 = np.empty_like(sflat)
    o2 = np.empty_like(sflat)
    cdef double[::1] sv = sflat
    cdef double[::1] tv = tflat
    cdef double[::1] v1 = o1
    cdef double[::1] v2 = o2
    cdef Py_ssize_t i, n = sv.shape[0]
    cdef double f, c, ph
    with nogil:
        for i in range(n):
            f = _fval(sv[i])
            c = sqrt(1.0 + sv[i] * sv[i])
            ph = f * sin(tv[i])
            v1[i] = c * cos(ph) - 1.0
            v2[i] = c * sin(ph)
    if scalar:
        return float(o1[0]), float(o2[0])
    return o1.reshape(shape), o2.reshape(shape)


def corr_bundle(s, t):
    sa = np.asarray(s, dtype=np.float64)
    ta = np.asarray(t, dtype=np.float64)
    sb, tb = np.broadcast_arrays(sa, ta)
    shape = sb.shape
    sflat = np.ascontiguousarray(np.atleast_1d(sb).ravel(), dtype=np.float64)
    tflat = np.ascontiguousarray(np.atleast_1d(tb).ravel(), dtype=np.float64)
    outs = [np.empty_like(sflat) for _ in range(6)]
    cdef double[::1] sv = sflat
    cdef double[::1] tv = tflat
    cdef double[::1] g1 = outs[0]
    cdef double[::1] g2 = outs[1]
    cdef double[::1] d1 = outs[2]
    cdef double[::1] d2 = outs[3]
    cdef double[::1] e1 = outs[4]
    cdef double[::1] e2 = outs[5]
    cdef Py_ssize_t i, n = sv.shape[0]
    cdef double f, fp, tr, c, ph
    with nogil:
        for i in range(n):
            f = _fval(sv[i])
            fp = _fprime(sv[i], f)
            tr = _mod2pi(tv[i])
            c = sqrt(1.0 + sv[i] * sv[i])
            ph = f * sin(tr)
            d1[i] = c * cos(ph) - 1.0
            d2[i] = c * sin(ph)
            _gamma_point(sv[i], f, tr, False, 0.0, &g1[i], &g2[i])
            _gamma_point(sv[i], f, tr, True, fp, &e1[i], &e2[i])
    return tuple(o.reshape(shape) for o in outs)


def backend_name():
    return "cython"
