"""Single-channel S/P solver: interior S wave against exterior P wave.

Continuity of the logarithmic derivative at r = R fixes the exterior
combination h_1^(2)(k_1 r) + S h_1^(1)(k_1 r) against the interior
j_0(k_0 r); because the interior derivative is real and h^(2) is the
conjugate of h^(1), S has unit modulus.  The resonance is characterized
on the real energy axis through the response sin^2(delta): peak location
by golden-section search, full width at half maximum by bisection, and
lifetime tau = hbar / Delta E.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import SolverError
from .model import (EXTERIOR, INTERIOR, Channel, ModelParams, frequencies,
                    rotational_energy, unit_spin_rotation_period, wavenumber)


@dataclass(frozen=True)
class SMatrixPoint:
    """One energy sample: E/W, S = e^{2 i delta}, delta, sin^2 delta.

    chi is the inelasticity exponent; it vanishes identically in the
    single-channel solver and is kept for schema compatibility with the
    multichannel module.
    """

    E_over_W: float
    S: complex
    delta: float
    sin2_delta: float
    chi: float = 0.0


@dataclass(frozen=True)
class ResonanceReport:
    E_peak_over_W: float
    fwhm_over_W: float
    tau: float  # units of m_H R^2 / hbar
    nu_ratio: float  # nu_R / nu_T at the peak
    tau_over_rotation: float  # tau / unit-spin rotation period


def single_channel_window(params: ModelParams) -> tuple[float, float]:
    """(W, E_F): energies with only the exterior P channel open."""
    W = params.threshold
    ef = rotational_energy(params, Channel(EXTERIOR, 3))
    return W, ef


def _interior_log_derivative(params: ModelParams, E: float) -> float:
    """d/dr log j_0(k_0 r) at r = R."""
    ch = Channel(INTERIOR, 0)
    k0 = wavenumber(params, ch, E).magnitude
    x0 = k0 * params.hoop_radius
    j, jp, _, _ = kernels.sph_jy_all(0, x0)
    return k0 * jp[0] / j[0]


def s_matrix_sp(params: ModelParams, E: float) -> SMatrixPoint:
    """S-matrix point at total energy E (absolute units of params).

    Valid for W < E < E_rot(exterior l=3); E = W itself is excluded
    because the exterior Hankel ratio is singular at zero wavenumber.
    """
    W, ef = single_channel_window(params)
    if not E > W:
        raise ValueError(f"need E > W for scattering, got E/W={E / W!r}"
                         " (use bound_state_scan below threshold)")
    if not E < ef:
        raise ValueError(f"E/W={E / W!r} is above the F-channel threshold"
                         f" {ef / W!r}; outside the single-channel window")
    beta = _interior_log_derivative(params, E)
    k1 = wavenumber(params, Channel(EXTERIOR, 1), E).magnitude
    x1 = k1 * params.hoop_radius
    j, jp, y, yp = kernels.sph_jy_all(1, x1)
    h1 = j[1] + 1j * y[1]
    h1p = jp[1] + 1j * yp[1]
    den = k1 * h1p - beta * h1
    S = -den.conjugate() / den
    ang = math.atan2(S.imag, S.real)
    if ang < 0.0:
        ang += 2.0 * math.pi
    delta = 0.5 * ang  # principal branch in [0, pi)
    sin2 = 0.5 * (1.0 - S.real)
    return SMatrixPoint(E / W, S, delta, sin2)


def phase_shift_scan(params: ModelParams, energies) -> list[SMatrixPoint]:
    """S-matrix points with delta unwrapped continuously along the grid.

    The first point takes its principal value in [0, pi); subsequent
    points are shifted by multiples of pi to stay continuous.
    """
    out: list[SMatrixPoint] = []
    prev = None
    for E in energies:
        pt = s_matrix_sp(params, float(E))
        if prev is not None:
            shift = round((prev - pt.delta) / math.pi)
            if shift:
                pt = SMatrixPoint(pt.E_over_W, pt.S,
                                  pt.delta + math.pi * shift,
                                  pt.sin2_delta, pt.chi)
        out.append(pt)
        prev = pt.delta
    return out


def _golden_max(f, a, b, xtol):
    """Golden-section maximizer on [a, b]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > xtol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def _bisect(f, a, b, xtol):
    """Plain bisection for f(a) f(b) < 0."""
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0:
        raise SolverError("bisection bracket does not straddle a root")
    while (b - a) > xtol:
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m
        if fa * fm < 0:
            b = m
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


def find_resonance(params: ModelParams, e_min_over_w: float = 1.0002,
                   e_max_over_w: float = 1.2, n_scan: int = 600,
                   tol: float = 1e-10) -> ResonanceReport:
    """Locate the sin^2(delta) resonance peak and extract its width.

    Scans [e_min, e_max] (in units of W), refines the peak by
    golden-section search and the two half-maximum crossings by
    bisection, all to `tol` in E/W.
    """
    W = params.threshold
    ef = single_channel_window(params)[1]
    if not (W < e_min_over_w * W < e_max_over_w * W < ef):
        raise ValueError("scan window must lie inside the single-channel range")
    if n_scan < 8:
        raise ValueError("n_scan too small to bracket a peak")

    def s2(E):
        return s_matrix_sp(params, E).sin2_delta

    grid = np.linspace(e_min_over_w * W, e_max_over_w * W, n_scan)
    vals = np.array([s2(E) for E in grid])
    ipk = int(np.argmax(vals))
    if ipk == 0 or ipk == n_scan - 1:
        raise SolverError("no interior sin^2(delta) peak in the scan range")
    xtol = tol * W
    e_peak = _golden_max(s2, grid[ipk - 1], grid[ipk + 1], xtol)

    half = lambda E: s2(E) - 0.5
    e_lo = _bisect(half, grid[0], e_peak, xtol)
    # walk right until the response has dropped below half maximum; the
    # response recovers towards 1 far above the peak, so stay local
    step = grid[1] - grid[0]
    hi = e_peak + step
    while half(hi) > 0:
        hi += step
        if hi >= grid[-1] + 0.5 * (grid[-1] - grid[0]):
            raise SolverError("upper half-maximum crossing not bracketed")
    e_hi = _bisect(half, e_peak, hi, xtol)

    de = e_hi - e_lo
    tau = params.hbar ** 2 / (de * params.hoop_mass * params.hoop_radius ** 2)
    nu_t, nu_r = frequencies(params, e_peak, transit_energy="exterior")
    tau_abs = params.hbar / de
    return ResonanceReport(
        E_peak_over_W=e_peak / W,
        fwhm_over_W=de / W,
        tau=tau,
        nu_ratio=nu_r / nu_t,
        tau_over_rotation=tau_abs / unit_spin_rotation_period(params),
    )


def log_derivative_ratio_at_threshold(params: ModelParams) -> float:
    """Interior-over-exterior logarithmic derivative ratio at E = W.

    The interior S wave arrives at threshold with k_0 R = 2 sqrt(mu/m_H)
    and log-derivative k_0 cot(k_0 R) - 1/R; the exterior P wave turns
    into the power-law tail 1/r^2 with log-derivative -2/R.  For the
    infinite-particle-mass hoop the ratio is (1 - 2 cot 2)/2 = 0.9577.
    """
    W = params.threshold
    inner = _interior_log_derivative(params, W)
    outer = -2.0 / params.hoop_radius
    return inner / outer


def bound_state_scan(params: ModelParams, energies) -> np.ndarray:
    """Interior-minus-exterior log-derivative mismatch below threshold.

    The exterior P channel is evanescent there (modified third-kind
    radial function); a bound state would appear as a zero crossing of
    the returned mismatch.  Energies must lie strictly inside (0, W).
    """
    W = params.threshold
    R = params.hoop_radius
    out = np.empty(len(energies))
    for i, E in enumerate(energies):
        E = float(E)
        if not 0.0 < E < W:
            raise ValueError(f"bound-state scan requires 0 < E < W, got E/W={E / W!r}")
        inner = _interior_log_derivative(params, E)
        kap = wavenumber(params, Channel(EXTERIOR, 1), E).magnitude
        x = kap * R
        _, _, kv, kp = kernels.sph_ik_all(1, x)
        outer = kap * kp[1] / kv[1]
        out[i] = inner - outer
    return out
