"""Physical model of the particle-hoop system: parameters, channels,
kinematics, characteristic frequencies, and the effective potential.

The hoop carries half a flux quantum, so the particle wave function
reverses parity across the hoop radius: with total angular momentum
zero, interior channels have even orbital index and exterior channels
odd.  Conservation of angular momentum ties the particle's orbital index
l to an equal and opposite hoop spin, so every channel pays the hoop
rotational energy hbar^2 l(l+1)/(2I).

The internal default is natural units (hbar = m_H = R = 1 with an
infinitely heavy particle), in which the exterior P threshold is W = 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

INTERIOR = "interior"
EXTERIOR = "exterior"

PROPAGATING = "propagating"
EVANESCENT = "evanescent"

#: CODATA values, used only when building SI-flavored parameter sets.
HBAR_SI = 1.054571817e-34  # J s
K_BOLTZMANN_SI = 1.380649e-23  # J/K


@dataclass(frozen=True)
class ModelParams:
    """Hoop radius/mass, particle mass (may be inf), and hbar."""

    hoop_radius: float = 1.0
    hoop_mass: float = 1.0
    particle_mass: float = math.inf
    hbar: float = 1.0

    def __post_init__(self):
        if not self.hoop_radius > 0:
            raise ValueError("hoop_radius must be positive")
        if not self.hoop_mass > 0:
            raise ValueError("hoop_mass must be positive")
        if not self.particle_mass > 0:
            raise ValueError("particle_mass must be positive (or inf)")
        if not self.hbar > 0:
            raise ValueError("hbar must be positive")

    @classmethod
    def natural(cls) -> "ModelParams":
        return cls()

    @classmethod
    def si_nanotube(cls) -> "ModelParams":
        """An SI-flavored parameter set (micron-scale hoop, kg masses).

        Dimensionless outputs are unit-system independent, so this preset
        exists to exercise that covariance and for SI-mode CLI runs.
        """
        return cls(hoop_radius=2.4e-6, hoop_mass=1.0e-19,
                   particle_mass=math.inf, hbar=HBAR_SI)

    @property
    def reduced_mass(self) -> float:
        if math.isinf(self.particle_mass):
            return self.hoop_mass
        return (self.hoop_mass * self.particle_mass
                / (self.hoop_mass + self.particle_mass))

    @property
    def moment_of_inertia(self) -> float:
        return 0.5 * self.hoop_mass * self.hoop_radius ** 2

    @property
    def threshold(self) -> float:
        """W: hoop rotational energy with one quantum of spin."""
        return 2.0 * self.hbar ** 2 / (2.0 * self.moment_of_inertia)


@dataclass(frozen=True)
class Channel:
    """A (region, orbital index) pair; interior l even, exterior l odd."""

    region: str
    l: int

    def __post_init__(self):
        if self.region not in (INTERIOR, EXTERIOR):
            raise ValueError(f"region must be interior or exterior, got {self.region!r}")
        if self.l < 0:
            raise ValueError("angular index must be non-negative")
        if self.region == INTERIOR and self.l % 2:
            raise ValueError(f"interior channels carry even l, got {self.l}")
        if self.region == EXTERIOR and self.l % 2 == 0:
            raise ValueError(f"exterior channels carry odd l, got {self.l}")


@dataclass(frozen=True)
class ChannelWavenumber:
    kind: str
    magnitude: float


def rotational_energy(params: ModelParams, ch: Channel) -> float:
    """Hoop rotational energy hbar^2 l(l+1)/(2I) for the channel."""
    return (params.hbar ** 2 * ch.l * (ch.l + 1)
            / (2.0 * params.moment_of_inertia))


def wavenumber(params: ModelParams, ch: Channel, E: float) -> ChannelWavenumber:
    """Channel wavenumber from the energy partition E = E_kin + E_rot.

    Propagating with hbar^2 k^2/(2 m_mu) = E - E_rot when E >= E_rot,
    evanescent with hbar^2 kappa^2/(2 m_mu) = E_rot - E otherwise.
    """
    if not E > 0:
        raise ValueError(f"energy must be positive, got {E!r}")
    erot = rotational_energy(params, ch)
    gap = E - erot
    mag = math.sqrt(2.0 * params.reduced_mass * abs(gap)) / params.hbar
    if gap >= 0:
        return ChannelWavenumber(PROPAGATING, mag)
    return ChannelWavenumber(EVANESCENT, mag)


def frequencies(params: ModelParams, E: float,
                transit_energy: str = "exterior") -> tuple[float, float]:
    """(nu_T, nu_R): transit and hoop-rotation frequencies at energy E.

    nu_T = v / 2R with v from the exterior P-channel asymptotic kinetic
    energy E - W ('exterior', default) or from the total energy E
    ('total', for comparison).  nu_R is the 0 <-> 1 hoop transition
    frequency and does not depend on E.
    """
    W = params.threshold
    if not E > W:
        raise ValueError(f"need E > threshold, got E={E!r}, W={W!r}")
    if transit_energy == "exterior":
        ekin = E - W
    elif transit_energy == "total":
        ekin = E
    else:
        raise ValueError("transit_energy must be 'exterior' or 'total'")
    v = math.sqrt(2.0 * ekin / params.reduced_mass)
    nu_t = v / (2.0 * params.hoop_radius)
    nu_r = params.hbar * 2.0 / (2.0 * math.pi * params.hoop_mass
                                * params.hoop_radius ** 2)
    return nu_t, nu_r


def unit_spin_rotation_period(params: ModelParams) -> float:
    """Classical rotation period of the hoop carrying unit spin.

    Angular momentum sqrt(l(l+1)) hbar at l=1, omega = L/I; this is the
    characteristic rotation time the resonance lifetime is compared to.
    """
    omega = math.sqrt(2.0) * params.hbar / params.moment_of_inertia
    return 2.0 * math.pi / omega


def effective_potential(params: ModelParams, ch: Channel, r: float) -> float:
    """Centrifugal barrier plus the channel's hoop-rotation offset.

    Interior channels are meaningful for r <= R, exterior for r >= R;
    evaluation bounds are enforced to one part in 1e-12 of R.
    """
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r!r}")
    R = params.hoop_radius
    tol = 1e-12 * R
    if ch.region == INTERIOR and r > R + tol:
        raise ValueError(f"interior channel evaluated at r={r!r} > R={R!r}")
    if ch.region == EXTERIOR and r < R - tol:
        raise ValueError(f"exterior channel evaluated at r={r!r} < R={R!r}")
    centrifugal = (params.hbar ** 2 * ch.l * (ch.l + 1)
                   / (2.0 * params.reduced_mass * r ** 2))
    return centrifugal + rotational_energy(params, ch)
