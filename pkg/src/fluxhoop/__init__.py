"""Numerical solver for a charged particle scattering on a rigid hoop
that carries half an Aharonov-Bohm flux quantum.

The parity reversal across the hoop radius couples interior even partial
waves to exterior odd ones; this package computes the resulting S/P
phase shifts and the near-threshold resonance, the static-hoop
multichannel amplitudes and their high-energy limits, Rayleigh-Ritz
variational bounds, and material-feasibility scaling estimates.
"""

__version__ = "0.1.0"

from .errors import FluxhoopError, KernelRangeError, SolverError
from .feasibility import FeasibilityParams, FeasibilityReport, estimate
from .kernels import BACKEND
from .model import (Channel, ChannelWavenumber, ModelParams,
                    effective_potential, frequencies, rotational_energy,
                    unit_spin_rotation_period, wavenumber)
from .multichannel import (AmplitudeSet, AsymptoticResidual,
                           TruncationScheme, asymptotic_check,
                           solve_static_system)
from .scattering import (ResonanceReport, SMatrixPoint, bound_state_scan,
                         find_resonance, log_derivative_ratio_at_threshold,
                         phase_shift_scan, s_matrix_sp,
                         single_channel_window)
from .specfun import OverlapTable, legendre_p, overlap, sph_bessel
from .variational import (ExtrapolationReport, SimpleTrialSeries,
                          VariationalResult, bessel_trial_minimize,
                          extrapolate_bound, minimize_over_e,
                          simple_trial_energy, variational_grid)

__all__ = [
    "__version__",
    "BACKEND",
    "FluxhoopError", "KernelRangeError", "SolverError",
    "ModelParams", "Channel", "ChannelWavenumber",
    "wavenumber", "frequencies", "rotational_energy",
    "effective_potential", "unit_spin_rotation_period",
    "legendre_p", "sph_bessel", "overlap", "OverlapTable",
    "SMatrixPoint", "ResonanceReport", "s_matrix_sp", "phase_shift_scan",
    "find_resonance", "log_derivative_ratio_at_threshold",
    "bound_state_scan", "single_channel_window",
    "TruncationScheme", "AmplitudeSet", "AsymptoticResidual",
    "solve_static_system", "asymptotic_check",
    "SimpleTrialSeries", "VariationalResult", "ExtrapolationReport",
    "simple_trial_energy", "bessel_trial_minimize", "minimize_over_e",
    "variational_grid", "extrapolate_bound",
    "FeasibilityParams", "FeasibilityReport", "estimate",
]
