"""Pure-Python backend for the recurrence kernels.

Conventions (shared with the compiled backend in ``_ckernels``):

* spherical Bessel functions with the standard normalization,
  j_0(x) = sin(x)/x and y_0(x) = -cos(x)/x;
* modified spherical Bessel functions with i_0(x) = sinh(x)/x and the
  third kind normalized as k_0(x) = exp(-x)/x (no pi/2 prefactor);
* every derivative returned is with respect to the argument x and comes
  from the same recurrence pass as the values.

j_n and i_n are generated by downward (Miller) recurrence, which is the
stable direction for them; y_n and k_n grow with the order and recurse
upward.  The downward pass rescales on the fly so intermediate values
never overflow even when the requested orders underflow.
"""

import math

import numpy as np

from .errors import KernelRangeError

BACKEND = "python"

_BIG = 1e250
_SMALL = 1e-250
_EXP_LIMIT = 700.0  # beyond this exp/sinh overflow or k_n underflows to 0


def _check_positive(x):
    if not x > 0.0:
        raise ValueError(f"argument must be positive, got {x!r}")


def legendre_all(nmax, mu):
    """P_0(mu) .. P_nmax(mu) by the three-term recurrence."""
    if nmax < 0:
        raise ValueError("order must be non-negative")
    if abs(mu) > 1.0:
        raise ValueError(f"Legendre argument must lie in [-1, 1], got {mu!r}")
    p = np.empty(nmax + 1)
    p[0] = 1.0
    if nmax == 0:
        return p
    p[1] = mu
    for k in range(1, nmax):
        p[k + 1] = ((2 * k + 1) * mu * p[k] - k * p[k - 1]) / (k + 1)
    return p


def legendre_grid(n, mu):
    """P_n evaluated on an array of arguments."""
    mu = np.asarray(mu, dtype=float)
    if n < 0:
        raise ValueError("order must be non-negative")
    if np.any(np.abs(mu) > 1.0):
        raise ValueError("Legendre argument must lie in [-1, 1]")
    pm = np.ones_like(mu)
    if n == 0:
        return pm
    pk = mu.copy()
    for k in range(1, n):
        pm, pk = pk, ((2 * k + 1) * mu * pk - k * pm) / (k + 1)
    return pk


def _miller_start(nmax, x):
    # above both the order and the turning point x, plus safety margin
    m = max(nmax, int(x))
    return m + 28 + int(1.7 * math.sqrt(m + 12.0))


def _jn_downward(nmax, x):
    """j_0..j_nmax via Miller recurrence with overflow rescaling."""
    M = _miller_start(nmax, x)
    f = np.zeros(M + 2)
    f[M] = _SMALL  # arbitrary seed; normalization fixes the scale
    for m in range(M, 0, -1):
        f[m - 1] = (2 * m + 1) / x * f[m] - f[m + 1]
        if abs(f[m - 1]) > _BIG:
            f[m - 1:] *= _SMALL
    j0 = math.sin(x) / x
    j1 = j0 / x - math.cos(x) / x
    # normalize against the larger of j0, j1 so zeros of sin(x) are harmless
    if abs(j0) >= abs(j1):
        scale = j0 / f[0]
    else:
        scale = j1 / f[1]
    return f[: nmax + 1] * scale


def sph_jy_all(nmax, x):
    """(j, j', y, y') for orders 0..nmax at scalar x > 0."""
    _check_positive(x)
    if nmax < 0:
        raise ValueError("order must be non-negative")
    nd = max(nmax, 1)
    j = _jn_downward(nd, x)
    y = np.empty(nd + 1)
    sx = math.sin(x)
    cx = math.cos(x)
    y[0] = -cx / x
    y[1] = -(cx / x + sx) / x
    for m in range(1, nd):
        y[m + 1] = (2 * m + 1) / x * y[m] - y[m - 1]
    jp = np.empty(nd + 1)
    yp = np.empty(nd + 1)
    jp[0] = -j[1]
    yp[0] = -y[1]
    for m in range(1, nd + 1):
        c = (m + 1) / x
        jp[m] = j[m - 1] - c * j[m]
        yp[m] = y[m - 1] - c * y[m]
    n1 = nmax + 1
    return j[:n1], jp[:n1], y[:n1], yp[:n1]


def _in_downward(nmax, x):
    """i_0..i_nmax via Miller recurrence (i_{m-1} = i_{m+1} + (2m+1)/x i_m)."""
    M = _miller_start(nmax, x)
    f = np.zeros(M + 2)
    f[M] = _SMALL
    for m in range(M, 0, -1):
        f[m - 1] = f[m + 1] + (2 * m + 1) / x * f[m]
        if abs(f[m - 1]) > _BIG:
            f[m - 1:] *= _SMALL
    i0 = math.sinh(x) / x  # never zero for x > 0
    return f[: nmax + 1] * (i0 / f[0])


def sph_ik_all(nmax, x):
    """(i, i', k, k') for orders 0..nmax at scalar x > 0.

    Raises KernelRangeError when k_n overflows at small x or when x is
    large enough that sinh/exp leave the double range.
    """
    _check_positive(x)
    if nmax < 0:
        raise ValueError("order must be non-negative")
    if x > _EXP_LIMIT:
        raise KernelRangeError(f"modified Bessel argument too large: x={x!r}")
    nd = max(nmax, 1)
    i = _in_downward(nd, x)
    k = np.empty(nd + 1)
    ex = math.exp(-x)
    k[0] = ex / x
    k[1] = ex * (x + 1.0) / (x * x)
    for m in range(1, nd):
        k[m + 1] = k[m - 1] + (2 * m + 1) / x * k[m]
        if math.isinf(k[m + 1]):
            raise KernelRangeError(f"k_{m + 1} overflows at x={x!r}")
    ip = np.empty(nd + 1)
    kp = np.empty(nd + 1)
    ip[0] = i[1]
    kp[0] = -k[1]
    for m in range(1, nd + 1):
        c = (m + 1) / x
        ip[m] = i[m - 1] - c * i[m]
        kp[m] = -k[m - 1] - c * k[m]
    n1 = nmax + 1
    return i[:n1], ip[:n1], k[:n1], kp[:n1]


def _grid(fn, pick, n, xs):
    xs = np.asarray(xs, dtype=float)
    flat = xs.ravel()
    v = np.empty(flat.shape)
    d = np.empty(flat.shape)
    for idx, x in enumerate(flat):
        res = fn(n, float(x))
        v[idx] = res[pick][n]
        d[idx] = res[pick + 1][n]
    return v.reshape(xs.shape), d.reshape(xs.shape)


def sph_jn_grid(n, xs):
    """(j_n, j_n') on an array of arguments."""
    return _grid(sph_jy_all, 0, n, xs)


def sph_yn_grid(n, xs):
    """(y_n, y_n') on an array of arguments."""
    return _grid(sph_jy_all, 2, n, xs)


def sph_in_grid(n, xs):
    """(i_n, i_n') on an array of arguments."""
    return _grid(sph_ik_all, 0, n, xs)


def sph_kn_grid(n, xs):
    """(k_n, k_n') on an array of arguments."""
    return _grid(sph_ik_all, 2, n, xs)
