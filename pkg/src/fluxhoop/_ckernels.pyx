# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for the recurrence kernels.

Same contract and conventions as ``_pykernels`` (that module's docstring
is the reference); this one exists because every solver funnels through
these scalar recurrences inside scan and refinement loops.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, fabs, isinf, sin, sinh, sqrt

from .errors import KernelRangeError

cnp.import_array()

BACKEND = "cython"

cdef double _BIG = 1e250
cdef double _SMALL = 1e-250
cdef double _EXP_LIMIT = 700.0


cdef inline int _miller_start(int nmax, double x):
    cdef int m = nmax
    if <int> x > m:
        m = <int> x
    return m + 28 + <int> (1.7 * sqrt(m + 12.0))


def legendre_all(int nmax, double mu):
    if nmax < 0:
        raise ValueError("order must be non-negative")
    if fabs(mu) > 1.0:
        raise ValueError(f"Legendre argument must lie in [-1, 1], got {mu!r}")
    cdef cnp.ndarray[cnp.float64_t, ndim=1] p = np.empty(nmax + 1)
    cdef int k
    p[0] = 1.0
    if nmax == 0:
        return p
    p[1] = mu
    for k in range(1, nmax):
        p[k + 1] = ((2 * k + 1) * mu * p[k] - k * p[k - 1]) / (k + 1)
    return p


def legendre_grid(int n, mu):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] m = np.ascontiguousarray(
        np.atleast_1d(np.asarray(mu, dtype=np.float64)).ravel())
    if n < 0:
        raise ValueError("order must be non-negative")
    cdef Py_ssize_t size = m.shape[0], idx
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(size)
    cdef double pm, pk, pn, x
    cdef int k
    for idx in range(size):
        x = m[idx]
        if fabs(x) > 1.0:
            raise ValueError("Legendre argument must lie in [-1, 1]")
        pm = 1.0
        if n == 0:
            out[idx] = pm
            continue
        pk = x
        for k in range(1, n):
            pn = ((2 * k + 1) * x * pk - k * pm) / (k + 1)
            pm = pk
            pk = pn
        out[idx] = pk
    return out.reshape(np.shape(mu))


cdef int _jn_down(int nmax, double x, double * out) except -1:
    """Fill out[0..nmax] with j_n(x); returns 0."""
    cdef int M = _miller_start(nmax, x)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] f = np.zeros(M + 2)
    cdef int m, q
    cdef double j0, j1, scale
    f[M] = _SMALL
    for m in range(M, 0, -1):
        f[m - 1] = (2 * m + 1) / x * f[m] - f[m + 1]
        if fabs(f[m - 1]) > _BIG:
            for q in range(m - 1, M + 2):
                f[q] *= _SMALL
    j0 = sin(x) / x
    j1 = j0 / x - cos(x) / x
    if fabs(j0) >= fabs(j1):
        scale = j0 / f[0]
    else:
        scale = j1 / f[1]
    for m in range(nmax + 1):
        out[m] = f[m] * scale
    return 0


cdef int _in_down(int nmax, double x, double * out) except -1:
    cdef int M = _miller_start(nmax, x)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] f = np.zeros(M + 2)
    cdef int m, q
    cdef double scale
    f[M] = _SMALL
    for m in range(M, 0, -1):
        f[m - 1] = f[m + 1] + (2 * m + 1) / x * f[m]
        if fabs(f[m - 1]) > _BIG:
            for q in range(m - 1, M + 2):
                f[q] *= _SMALL
    scale = (sinh(x) / x) / f[0]
    for m in range(nmax + 1):
        out[m] = f[m] * scale
    return 0


def sph_jy_all(int nmax, double x):
    if not x > 0.0:
        raise ValueError(f"argument must be positive, got {x!r}")
    if nmax < 0:
        raise ValueError("order must be non-negative")
    cdef int nd = nmax if nmax > 1 else 1
    cdef cnp.ndarray[cnp.float64_t, ndim=1] j = np.empty(nd + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] y = np.empty(nd + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] jp = np.empty(nd + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] yp = np.empty(nd + 1)
    cdef int m
    cdef double c, sx = sin(x), cx = cos(x)
    _jn_down(nd, x, <double *> j.data)
    y[0] = -cx / x
    y[1] = -(cx / x + sx) / x
    for m in range(1, nd):
        y[m + 1] = (2 * m + 1) / x * y[m] - y[m - 1]
    jp[0] = -j[1]
    yp[0] = -y[1]
    for m in range(1, nd + 1):
        c = (m + 1) / x
        jp[m] = j[m - 1] - c * j[m]
        yp[m] = y[m - 1] - c * y[m]
    cdef int n1 = nmax + 1
    return j[:n1], jp[:n1], y[:n1], yp[:n1]


def sph_ik_all(int nmax, double x):
    if not x > 0.0:
        raise ValueError(f"argument must be positive, got {x!r}")
    if nmax < 0:
        raise ValueError("order must be non-negative")
    if x > _EXP_LIMIT:
        raise KernelRangeError(f"modified Bessel argument too large: x={x!r}")
    cdef int nd = nmax if nmax > 1 else 1
    cdef cnp.ndarray[cnp.float64_t, ndim=1] iv = np.empty(nd + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] kv = np.empty(nd + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ip = np.empty(nd + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] kp = np.empty(nd + 1)
    cdef int m
    cdef double c, ex = exp(-x)
    _in_down(nd, x, <double *> iv.data)
    kv[0] = ex / x
    kv[1] = ex * (x + 1.0) / (x * x)
    for m in range(1, nd):
        kv[m + 1] = kv[m - 1] + (2 * m + 1) / x * kv[m]
        if isinf(kv[m + 1]):
            raise KernelRangeError(f"k_{m + 1} overflows at x={x!r}")
    ip[0] = iv[1]
    kp[0] = -kv[1]
    for m in range(1, nd + 1):
        c = (m + 1) / x
        ip[m] = iv[m - 1] - c * iv[m]
        kp[m] = -kv[m - 1] - c * kv[m]
    cdef int n1 = nmax + 1
    return iv[:n1], ip[:n1], kv[:n1], kp[:n1]


def _grid_impl(int n, xs, bint modified, int pick):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] flat = np.ascontiguousarray(
        np.atleast_1d(np.asarray(xs, dtype=np.float64)).ravel())
    cdef Py_ssize_t size = flat.shape[0], idx
    cdef cnp.ndarray[cnp.float64_t, ndim=1] v = np.empty(size)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = np.empty(size)
    for idx in range(size):
        if modified:
            res = sph_ik_all(n, flat[idx])
        else:
            res = sph_jy_all(n, flat[idx])
        v[idx] = res[pick][n]
        d[idx] = res[pick + 1][n]
    shape = np.shape(xs)
    return v.reshape(shape), d.reshape(shape)


def sph_jn_grid(int n, xs):
    return _grid_impl(n, xs, False, 0)


def sph_yn_grid(int n, xs):
    return _grid_impl(n, xs, False, 2)


def sph_in_grid(int n, xs):
    return _grid_impl(n, xs, True, 0)


def sph_kn_grid(int n, xs):
    return _grid_impl(n, xs, True, 2)
