"""Material-feasibility estimator for a nanotube hoop plus a heavy
charged sphere.

Geometry: a single-layer carbon tube bent into a circle, N atoms around
the major circumference and n around the minor one, so R = N l_c / (2 pi)
and m_H = N n m_c.  The charged particle is a lead sphere of radius
r_p = R / alpha; requiring m_p / m_H = beta fixes

    N = sqrt(6 pi^2 alpha^3 beta n m_c / (rho l_c^3)),

which carries the scaling law N ~ (alpha^3 beta n)^(1/2) and, through
tau = 143 m_H R^2 / hbar ~ n N^3, the exponents
tau ~ alpha^(9/2) beta^(3/2) n^(5/2).

The resonance-lifetime coefficient 143 is kept as the fixed bridge from
natural to SI units (hoop-mass convention, infinitely heavy particle).
Absolute outputs are order-of-magnitude estimates; the exponents are
exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import HBAR_SI, K_BOLTZMANN_SI

#: dimensionless lifetime of the S/P resonance in units m_H R^2 / hbar
TAU_COEFFICIENT = 143.0

#: carbon atom mass, kg (12 u)
CARBON_MASS_KG = 2.0e-26
#: carbon-carbon bond length, m
BOND_LENGTH_M = 1.5e-10
#: bulk density of lead, kg/m^3
LEAD_DENSITY_KG_M3 = 1.1e4


@dataclass(frozen=True)
class FeasibilityParams:
    """Aspect ratio alpha = R/r_p, mass ratio beta = m_p/m_H, and the
    minor-circumference atom count n, plus material constants."""

    alpha: float = 50.0
    beta: float = 50.0
    n_minor: float = 50.0
    carbon_mass: float = CARBON_MASS_KG
    bond_length: float = BOND_LENGTH_M
    sphere_density: float = LEAD_DENSITY_KG_M3

    def __post_init__(self):
        for name in ("alpha", "beta", "n_minor", "carbon_mass",
                     "bond_length", "sphere_density"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class FeasibilityReport:
    n_major: float  # atoms spanning the major circumference
    hoop_radius_m: float
    hoop_mass_kg: float
    particle_radius_m: float
    particle_mass_kg: float
    tau_seconds: float
    tau_hours: float
    temperature_K: float
    #: scaling exponents of (N, tau) in (alpha, beta, n)
    n_exponents: tuple[float, float, float]
    tau_exponents: tuple[float, float, float]


#: exact exponents implied by the closed-form solve above
N_EXPONENTS = (1.5, 0.5, 0.5)
TAU_EXPONENTS = (4.5, 1.5, 2.5)


def estimate(params: FeasibilityParams) -> FeasibilityReport:
    """Solve the geometry for N and convert tau and the temperature
    scale to SI units."""
    a, b, n = params.alpha, params.beta, params.n_minor
    mc, lc, rho = params.carbon_mass, params.bond_length, params.sphere_density
    n_major = math.sqrt(6.0 * math.pi ** 2 * a ** 3 * b * n * mc
                        / (rho * lc ** 3))
    radius = n_major * lc / (2.0 * math.pi)
    hoop_mass = n_major * n * mc
    r_p = radius / a
    m_p = rho * (4.0 / 3.0) * math.pi * r_p ** 3
    tau = TAU_COEFFICIENT * hoop_mass * radius ** 2 / HBAR_SI
    temperature = HBAR_SI ** 2 / (hoop_mass * radius ** 2 * K_BOLTZMANN_SI)
    return FeasibilityReport(
        n_major=n_major,
        hoop_radius_m=radius,
        hoop_mass_kg=hoop_mass,
        particle_radius_m=r_p,
        particle_mass_kg=m_p,
        tau_seconds=tau,
        tau_hours=tau / 3600.0,
        temperature_K=temperature,
        n_exponents=N_EXPONENTS,
        tau_exponents=TAU_EXPONENTS,
    )
