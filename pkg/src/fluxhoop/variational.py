"""Rayleigh-Ritz machinery: the divergent simple trial function and the
Bessel-basis bound with static-hoop projection.

Simple trial: constant interior wave, exterior odd waves decaying as
(R/r)^(l+1) with amplitudes fixed by projecting the interior constant
onto each exterior channel, a_l = (2l+1) O(0, l).  All three energy
terms per channel (radial gradient, centrifugal, hoop rotation) have
closed forms; the hoop-rotation term falls off only as 1/l, so the
cumulative energy grows like log L.

Bessel trial: interior amplitudes are free parameters; at construction
energy E_e = e W < W the interior S wave is j_0, interior n >= 2 and all
exterior channels are evanescent (i_n inside, third-kind k_l outside).
Exterior amplitudes are eliminated through the projection constraint
a_l g_l(R) = (2l+1) sum_n c_n f_n(R) O(n, l), leaving a symmetric
generalized eigenproblem over the interior amplitudes.

Radial integrals reduce to boundary terms: with u = r phi and
u'' = Q u, (d/dr)[r (u'^2 - Q u^2) - u u'] = -+ 2 q^2 u^2, so every norm
is a closed-form expression in the boundary value and log-derivative,
and the kinetic-plus-centrifugal combination integrates by parts to a
pure boundary term.  A quadrature route is kept in the test suite as an
independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import kernels
from .errors import SolverError
from .model import (EXTERIOR, INTERIOR, PROPAGATING, Channel, ModelParams,
                    rotational_energy, wavenumber)
from .specfun import OverlapTable, overlap

#: default grids for the extrapolation study
DEFAULT_N_MAX = 12
DEFAULT_L_MAX = 41
DEFAULT_L_MIN = 9
#: construction-energy scan bounds; the upper cap stays strictly below
#: threshold so every exterior channel is genuinely evanescent
DEFAULT_E_RANGE = (0.05, 0.995)
#: ln L fits use only L >= this (the log-linear regime)
DEFAULT_L_FIT_MIN = 21


@dataclass(frozen=True)
class SimpleTrialSeries:
    """Channel-resolved pieces of the simple-trial energy (natural units)."""

    L: int
    l_values: np.ndarray  # 0 (interior) followed by the odd orders
    grad_terms: np.ndarray
    centrifugal_terms: np.ndarray
    rotation_terms: np.ndarray
    norm_terms: np.ndarray
    cumulative_energy: np.ndarray
    cumulative_norm: np.ndarray

    @property
    def rayleigh_quotient(self) -> float:
        return float(self.cumulative_energy[-1] / self.cumulative_norm[-1])


def simple_trial_energy(L: int) -> SimpleTrialSeries:
    """Energy series of the constant-inside, power-law-outside trial.

    Natural units (R = 1, m_mu = m_H = hbar = 1).  Returns the three
    energy terms and the norm per channel together with cumulative sums;
    the interior channel contributes zero energy and norm 4 pi / 3.
    """
    if L < 1 or L % 2 == 0:
        raise ValueError(f"L must be odd and positive, got {L}")
    ls = np.arange(1, L + 1, 2)
    count = len(ls) + 1
    lv = np.empty(count, dtype=int)
    grad = np.zeros(count)
    cent = np.zeros(count)
    rot = np.zeros(count)
    norm = np.zeros(count)
    lv[0] = 0
    norm[0] = 4.0 * math.pi / 3.0
    for i, l in enumerate(ls, start=1):
        o2 = overlap(0, int(l)) ** 2
        lv[i] = l
        # amplitude a_l = (2l+1) O(0,l); angular weight 4 pi/(2l+1)
        grad[i] = 2.0 * math.pi * (l + 1) ** 2 * o2
        cent[i] = 2.0 * math.pi * l * (l + 1) * o2
        rot[i] = 4.0 * math.pi * l * (l + 1) * (2 * l + 1) * o2 / (2 * l - 1)
        norm[i] = 4.0 * math.pi * (2 * l + 1) * o2 / (2 * l - 1)
    energy = grad + cent + rot
    return SimpleTrialSeries(
        L=L, l_values=lv, grad_terms=grad, centrifugal_terms=cent,
        rotation_terms=rot, norm_terms=norm,
        cumulative_energy=np.cumsum(energy),
        cumulative_norm=np.cumsum(norm),
    )


def linear_fit(x, y) -> tuple[float, float, float]:
    """(intercept, slope, R^2) of an ordinary least-squares line."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) < 2:
        raise ValueError("need at least two points for a line")
    design = np.vstack([np.ones_like(x), x]).T
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    yhat = design @ coef
    ss_res = float(np.sum((y - yhat) ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(coef[0]), float(coef[1]), r2


def log_divergence_fit(series: SimpleTrialSeries, l_min: int = 21,
                       l_max: int | None = None) -> tuple[float, float]:
    """(slope, R^2) of the cumulative energy against ln L."""
    mask = series.l_values >= l_min
    if l_max is not None:
        mask &= series.l_values <= l_max
    ls = series.l_values[mask]
    if len(ls) < 3:
        raise ValueError("not enough channels in the fit window")
    _, slope, r2 = linear_fit(np.log(ls), series.cumulative_energy[mask])
    return slope, r2


@dataclass(frozen=True)
class VariationalResult:
    """Minimized Rayleigh quotient for one (N, L) at construction energy e."""

    N: int
    L: int
    e: float
    E_min_over_W: float


def _boundary_data(params: ModelParams, region: str, l: int, E_e: float):
    """(log-derivative at R, closed-form norm of the unit-boundary radial fn)."""
    R = params.hoop_radius
    ch = Channel(region, l)
    wn = wavenumber(params, ch, E_e)
    x = wn.magnitude * R
    c = l * (l + 1)
    if region == INTERIOR:
        if wn.kind == PROPAGATING:
            j, jp, _, _ = kernels.sph_jy_all(l, x)
            ld = wn.magnitude * jp[l] / j[l]
            up = 1.0 + R * ld
            F = R * (up * up + x * x - c - up)
            return ld, F / (2.0 * wn.magnitude ** 2)
        iv, ip, _, _ = kernels.sph_ik_all(l, x)
        ld = wn.magnitude * ip[l] / iv[l]
        up = 1.0 + R * ld
        F = R * (up * up - x * x - c - up)
        return ld, -F / (2.0 * wn.magnitude ** 2)
    if wn.kind == PROPAGATING:
        raise ValueError(f"exterior channel l={l} not evanescent at e={E_e!r}")
    _, _, kv, kp = kernels.sph_ik_all(l, x)
    ld = wn.magnitude * kp[l] / kv[l]
    up = 1.0 + R * ld
    F = R * (up * up - x * x - c - up)
    return ld, F / (2.0 * wn.magnitude ** 2)


def bessel_trial_minimize(params: ModelParams, N: int, L: int,
                          e: float,
                          overlaps: OverlapTable | None = None) -> VariationalResult:
    """Minimum Rayleigh quotient over interior amplitudes at fixed e.

    Needs 0 < e < 1 (construction energy below threshold) and L >= N+1.
    The exterior amplitudes are eliminated through the static-hoop
    projection before the symmetric-definite eigenproblem is solved.
    """
    if N < 0 or N % 2:
        raise ValueError(f"N must be even and non-negative, got {N}")
    if L < 1 or L % 2 == 0:
        raise ValueError(f"L must be odd and positive, got {L}")
    if L < N + 1:
        raise ValueError(f"need at least as many exterior channels: L >= N+1, got N={N}, L={L}")
    if not 0.0 < e < 1.0:
        raise ValueError(f"construction energy must satisfy 0 < e < 1, got {e!r}")
    if overlaps is None:
        overlaps = OverlapTable(N, L)
    W = params.threshold
    E_e = e * W
    R = params.hoop_radius
    kin = params.hbar ** 2 * R ** 2 / (2.0 * params.reduced_mass)

    ns = list(range(0, N + 1, 2))
    ls = list(range(1, L + 1, 2))
    ang_in = np.array([4.0 * math.pi / (2 * n + 1) for n in ns])
    ang_out = np.array([4.0 * math.pi / (2 * l + 1) for l in ls])
    ld_in = np.empty(len(ns))
    norm_in = np.empty(len(ns))
    for i, n in enumerate(ns):
        ld_in[i], norm_in[i] = _boundary_data(params, INTERIOR, n, E_e)
    ld_out = np.empty(len(ls))
    norm_out = np.empty(len(ls))
    for i, l in enumerate(ls):
        ld_out[i], norm_out[i] = _boundary_data(params, EXTERIOR, l, E_e)

    proj = np.array([[(2 * l + 1) * overlaps.get(n, l) for n in ns] for l in ls])
    A = kin * (np.diag(ang_in * ld_in)
               + proj.T @ np.diag(ang_out * (-ld_out)) @ proj)
    B = (np.diag(ang_in * norm_in)
         + proj.T @ np.diag(ang_out * norm_out) @ proj)
    try:
        w = scipy.linalg.eigh(A, B, eigvals_only=True)
    except scipy.linalg.LinAlgError as exc:
        raise SolverError(
            f"norm matrix not positive definite at N={N}, L={L}, e={e}: {exc}") from exc
    return VariationalResult(N=N, L=L, e=e, E_min_over_W=(E_e + w[0]) / W)


def _golden_min(f, a, b, xtol):
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > xtol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def minimize_over_e(params: ModelParams, N: int, L: int,
                    e_range: tuple[float, float] = DEFAULT_E_RANGE,
                    n_scan: int = 24, xtol: float = 1e-9,
                    overlaps: OverlapTable | None = None) -> VariationalResult:
    """Best construction energy for (N, L): coarse scan plus golden refine."""
    if overlaps is None:
        overlaps = OverlapTable(max(N, 0), L)
    lo, hi = e_range
    if not (0.0 < lo < hi < 1.0):
        raise ValueError(f"e_range must satisfy 0 < lo < hi < 1, got {e_range!r}")

    def f(e):
        return bessel_trial_minimize(params, N, L, e, overlaps).E_min_over_W

    es = np.linspace(lo, hi, n_scan)
    vals = [f(e) for e in es]
    i = int(np.argmin(vals))
    a = es[max(i - 1, 0)]
    b = es[min(i + 1, n_scan - 1)]
    e_best = _golden_min(f, a, b, xtol)
    if f(hi) < f(e_best):
        e_best = hi
    return bessel_trial_minimize(params, N, L, e_best, overlaps)


def variational_grid(params: ModelParams, n_max: int = DEFAULT_N_MAX,
                     l_max: int = DEFAULT_L_MAX, l_min: int = DEFAULT_L_MIN,
                     e_range: tuple[float, float] = DEFAULT_E_RANGE,
                     n_scan: int = 24,
                     map_fn=map) -> list[VariationalResult]:
    """e-minimized results over the default (N, L) grid.

    Each N from 0 to n_max (even) is paired with every odd L from
    max(N+1, l_min) to l_max.  `map_fn` may be an executor map; results
    come back in deterministic grid order either way.
    """
    if n_max < 0 or n_max % 2:
        raise ValueError("n_max must be even and non-negative")
    if l_max % 2 == 0 or l_max < 1:
        raise ValueError("l_max must be odd and positive")
    overlaps = OverlapTable(n_max, l_max)
    tasks = [(N, L)
             for N in range(0, n_max + 1, 2)
             for L in range(max(N + 1, l_min), l_max + 1, 2)]

    def run(nl):
        return minimize_over_e(params, nl[0], nl[1], e_range=e_range,
                               n_scan=n_scan, overlaps=overlaps)

    return list(map_fn(run, tasks))


@dataclass(frozen=True)
class ExtrapolationReport:
    """ln L intercepts/slopes per N and their 1/(N+2) extrapolation."""

    bound_over_W: float
    beta_inf: float
    n_values: list[int]
    alpha_by_n: dict[int, float]
    beta_by_n: dict[int, float]
    r2_lnl_by_n: dict[int, float]
    alpha_r2: float
    beta_r2: float
    l_fit_min: int = DEFAULT_L_FIT_MIN


def extrapolate_bound(results: list[VariationalResult],
                      l_fit_min: int = DEFAULT_L_FIT_MIN,
                      r2_min: float = 0.9) -> ExtrapolationReport:
    """Extrapolate the grid of minimized quotients to N -> infinity.

    Per N the quotient is fitted as alpha_N + beta_N ln L over L >=
    l_fit_min; alpha_N and beta_N are then extrapolated linearly in
    1/(N+2) to the intercept at infinite N (beta_inf should come out
    near zero: the damped-divergence diagnostic).  Fits with R^2 below
    r2_min raise SolverError rather than silently degrading the bound.
    """
    best: dict[tuple[int, int], float] = {}
    for r in results:
        key = (r.N, r.L)
        if key not in best or r.E_min_over_W < best[key]:
            best[key] = r.E_min_over_W
    n_values = sorted({n for n, _ in best})
    if len(n_values) < 3:
        raise SolverError("need results for at least three N values")
    alpha_by_n: dict[int, float] = {}
    beta_by_n: dict[int, float] = {}
    r2_by_n: dict[int, float] = {}
    for n in n_values:
        pts = sorted((l, v) for (nn, l), v in best.items()
                     if nn == n and l >= l_fit_min)
        if len(pts) < 3:
            raise SolverError(
                f"need at least three L >= {l_fit_min} values at N={n}")
        ls = np.array([p[0] for p in pts], dtype=float)
        es = np.array([p[1] for p in pts])
        a, b, r2 = linear_fit(np.log(ls), es)
        if r2 < r2_min:
            raise SolverError(
                f"poor ln L fit at N={n}: R^2={r2:.4f} < {r2_min}")
        alpha_by_n[n] = a
        beta_by_n[n] = b
        r2_by_n[n] = r2
    xs = [1.0 / (n + 2.0) for n in n_values]
    alpha_inf, _, alpha_r2 = linear_fit(xs, [alpha_by_n[n] for n in n_values])
    beta_inf, _, beta_r2 = linear_fit(xs, [beta_by_n[n] for n in n_values])
    if alpha_r2 < r2_min:
        raise SolverError(
            f"poor 1/(N+2) extrapolation fit: R^2={alpha_r2:.4f} < {r2_min}")
    return ExtrapolationReport(
        bound_over_W=alpha_inf,
        beta_inf=beta_inf,
        n_values=n_values,
        alpha_by_n=alpha_by_n,
        beta_by_n=beta_by_n,
        r2_lnl_by_n=r2_by_n,
        alpha_r2=alpha_r2,
        beta_r2=beta_r2,
        l_fit_min=l_fit_min,
    )
