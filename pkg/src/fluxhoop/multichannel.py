"""Static-hoop multichannel matching for an incoming exterior P wave.

For each retained interior channel n the logarithmic derivative of
j_n(k_n r) at r = R must equal that of the projected exterior sum, whose
terms are weighted by the half-interval Legendre overlaps O(n, l).  With
the number of interior conditions equal to the number of exterior
amplitudes (L = N + 1) this is a square complex linear system for the
outgoing amplitudes c_l; the incident P amplitude is normalized to one.

Rows are assembled in the cross-multiplied form
    c_l O(n,l) [j_n D_l - (d/dr j_n) G_l] = -O(n,1) [j_n D - (d/dr j_n) G]
(G, D: exterior radial value and radial derivative at R) so zeros of
j_n(k_n R) are harmless.  Exterior channels that are closed at the
requested energy decay as modified third-kind functions and occupy the
same rows; the system is not unitarized (truncation keeps it slightly
non-unitary, which the inelasticity diagnostics expose).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import kernels
from .errors import SolverError
from .model import (EXTERIOR, INTERIOR, PROPAGATING, Channel, ModelParams,
                    rotational_energy, wavenumber)
from .specfun import OverlapTable

#: k_1 R at least this multiple of L before the asymptotic regime applies
HIGH_ENERGY_MARGIN = 10.0


@dataclass(frozen=True)
class TruncationScheme:
    """Interior cutoff N (even) and exterior cutoff L (odd), L = N + 1."""

    N: int
    L: int

    def __post_init__(self):
        if self.N < 0 or self.N % 2:
            raise ValueError(f"N must be even and non-negative, got {self.N}")
        if self.L % 2 == 0 or self.L < 1:
            raise ValueError(f"L must be odd and positive, got {self.L}")
        if self.L != self.N + 1:
            raise ValueError(
                f"open channel counts must match: need L = N + 1, got N={self.N}, L={self.L}")

    @classmethod
    def for_L(cls, L: int) -> "TruncationScheme":
        return cls(L - 1, L)

    @property
    def interior_orders(self):
        return range(0, self.N + 1, 2)

    @property
    def exterior_orders(self):
        return range(1, self.L + 1, 2)


@dataclass(frozen=True)
class AmplitudeSet:
    """Outgoing amplitudes and elasticity diagnostics at one energy."""

    E_over_W: float
    k1R: float
    c: dict[int, complex]
    chi: float
    elasticity: float
    sum_higher: float  # sum of |c_l|^2 over l > 1
    cond: float
    residual: float
    in_asymptotic_regime: bool

    @property
    def S(self) -> complex:
        return self.c[1]


@dataclass(frozen=True)
class AsymptoticResidual:
    """One interior channel's high-energy matching record.

    lhs and rhs are the wavenumber-weighted tangents
    k_n tan[k_n R - (pi/2)(n+1)] and k_1 tan(k_1 R - pi/2); residual is
    their mismatch with each side scaled by its own wavenumber,
    tan[k_n R - (pi/2)(n+1)] - tan(k_1 R - pi/2), which vanishes exactly
    whenever the two angles differ by a multiple of pi.
    """

    n: int
    lhs: float
    rhs: float
    residual: float


def _exterior_boundary(params: ModelParams, E: float, l: int):
    """(G, D): outgoing radial value and d/dr at R; incident pair for l=1.

    Open channels use h^(1) (and h^(2) for the incident wave); closed
    channels decay as modified third-kind functions and have no incident
    part.
    """
    R = params.hoop_radius
    wn = wavenumber(params, Channel(EXTERIOR, l), E)
    x = wn.magnitude * R
    if wn.kind == PROPAGATING:
        if x == 0.0:
            raise ValueError(f"exterior channel l={l} exactly at threshold")
        j, jp, y, yp = kernels.sph_jy_all(l, x)
        G = j[l] + 1j * y[l]
        D = wn.magnitude * (jp[l] + 1j * yp[l])
        Ginc = j[l] - 1j * y[l]
        Dinc = wn.magnitude * (jp[l] - 1j * yp[l])
        return G, D, Ginc, Dinc, wn
    _, _, kv, kp = kernels.sph_ik_all(l, x)
    return kv[l] + 0j, wn.magnitude * kp[l] + 0j, None, None, wn


def solve_static_system(params: ModelParams, E: float,
                        trunc: TruncationScheme,
                        overlaps: OverlapTable | None = None) -> AmplitudeSet:
    """Solve the matching system at total energy E for a truncation.

    Every retained interior channel must be open at E, and the exterior
    P channel must be open (it carries the unit-amplitude incident
    wave).  Exterior channels with l > 1 may be closed.
    """
    W = params.threshold
    R = params.hoop_radius
    if overlaps is None:
        overlaps = OverlapTable(trunc.N, trunc.L)
    if not E > W:
        raise ValueError(f"incident P channel closed: need E > W, got E/W={E / W!r}")

    ns = list(trunc.interior_orders)
    ls = list(trunc.exterior_orders)
    jn_val = {}
    jn_der = {}
    for n in ns:
        wn = wavenumber(params, Channel(INTERIOR, n), E)
        if wn.kind != PROPAGATING or wn.magnitude == 0.0:
            erot = rotational_energy(params, Channel(INTERIOR, n))
            raise ValueError(
                f"interior channel n={n} closed at E/W={E / W!r}"
                f" (threshold {erot / W!r} W)")
        x = wn.magnitude * R
        j, jp, _, _ = kernels.sph_jy_all(n, x)
        jn_val[n] = j[n]
        jn_der[n] = wn.magnitude * jp[n]

    G = {}
    D = {}
    for l in ls:
        G[l], D[l], Ginc, Dinc, wn1 = _exterior_boundary(params, E, l)
        if l == 1:
            k1 = wn1.magnitude
            G2, D2 = Ginc, Dinc

    dim = len(ns)
    A = np.empty((dim, dim), dtype=complex)
    b = np.empty(dim, dtype=complex)
    for a, n in enumerate(ns):
        jv, jd = jn_val[n], jn_der[n]
        for col, l in enumerate(ls):
            A[a, col] = overlaps.get(n, l) * (jv * D[l] - jd * G[l])
        b[a] = -overlaps.get(n, 1) * (jv * D2 - jd * G2)

    cond = float(np.linalg.cond(A))
    if not math.isfinite(cond) or cond > 1e14:
        raise SolverError(
            f"singular matching system at E/W={E / W!r}: cond={cond:.3e}")
    c = scipy.linalg.solve(A, b)
    residual = float(np.linalg.norm(A @ c - b))

    cmap = {l: complex(c[i]) for i, l in enumerate(ls)}
    s = cmap[1]
    elasticity = abs(s) ** 2
    chi = -math.log(abs(s))
    sum_higher = float(sum(abs(v) ** 2 for l, v in cmap.items() if l > 1))
    k1R = k1 * R
    return AmplitudeSet(
        E_over_W=E / W,
        k1R=k1R,
        c=cmap,
        chi=chi,
        elasticity=elasticity,
        sum_higher=sum_higher,
        cond=cond,
        residual=residual,
        in_asymptotic_regime=k1R >= HIGH_ENERGY_MARGIN * trunc.L,
    )


def asymptotic_check(params: ModelParams, E: float,
                     trunc: TruncationScheme) -> list[AsymptoticResidual]:
    """High-energy matching residuals under c_1 = -1, c_{l>1} = 0.

    Substituting the large-argument sinusoid forms of the radial
    functions into the matching rows reduces each interior condition to
    k_n tan[k_n R - (pi/2)(n+1)] = k_1 tan(k_1 R - pi/2); the residual
    reported per channel is the tangent mismatch (see
    AsymptoticResidual).  Meaningful when k_n R >> n for all retained n.
    """
    W = params.threshold
    R = params.hoop_radius
    if not E > W:
        raise ValueError(f"need E > W, got E/W={E / W!r}")
    k1 = wavenumber(params, Channel(EXTERIOR, 1), E).magnitude
    t1 = math.tan(k1 * R - 0.5 * math.pi)
    out = []
    for n in trunc.interior_orders:
        wn = wavenumber(params, Channel(INTERIOR, n), E)
        if wn.kind != PROPAGATING:
            raise ValueError(f"interior channel n={n} closed at E/W={E / W!r}")
        kn = wn.magnitude
        tn = math.tan(kn * R - 0.5 * math.pi * (n + 1))
        out.append(AsymptoticResidual(n=n, lhs=kn * tn, rhs=k1 * t1,
                                      residual=tn - t1))
    return out
