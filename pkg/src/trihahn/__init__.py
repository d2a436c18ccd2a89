"""Exactly solvable single-excitation dynamics on a triangular spin lattice.

The lattice couplings come from recurrence coefficients of bivariate
dual-Hahn polynomials; the full eigensystem, transition amplitudes, and the
parameter families with perfect state transfer and fractional revival are
available in closed form and certified numerically.

Hot kernels (table fills, amplitude sums) run through a compiled extension
when built, with a pure-Python fallback selected at import; see
``trihahn._backend``.
"""

from ._backend import backend_name
from .bivariate import (ModelContext, eigvec_entry, first_family, get_context,
                        norm_r, second_family, tratnik_D, weight_W2)
from .dynamics import (AmplitudeGrid, amplitude_grid, amplitude_timeseries,
                       jacobi_eigensystem, propagate_oracle, propagate_row,
                       propagate_spectral, propagator_matrix)
from .lattice import (CouplingSet, Hamiltonian1Ex, assemble, coupling_B,
                      coupling_J, coupling_L, couplings, eigenvalue_collisions,
                      validate_params)
from .model import (ConvergenceError, DegreeIndex, EvolutionTime, GridPoint,
                    ModelParams, PoleError, RegimeViolationError, Site,
                    grid_points, parse_rational, sites)
from .specfun import (DualHahnParams, SignedLog, dual_hahn, hyp3f2_terminating,
                      log_gamma_signed, multi_pochhammer, norm_h, pochhammer,
                      weight_w)
from .transfer import (EVEN_PERIOD, ODD_PERIOD, FamilyRejection, PstFamilySpec,
                       TransferReport, certify_pst, check_phase_condition,
                       detect_fractional_revival,
                       endpoint_amplitude_closed_form,
                       endpoint_transfer_probability, family_params,
                       family_time, identify_family, mirror_site)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeGrid", "ConvergenceError", "CouplingSet", "DegreeIndex",
    "DualHahnParams", "EVEN_PERIOD", "EvolutionTime", "FamilyRejection",
    "GridPoint", "Hamiltonian1Ex", "ModelContext", "ModelParams",
    "ODD_PERIOD", "PoleError", "PstFamilySpec", "RegimeViolationError",
    "SignedLog", "Site", "TransferReport", "amplitude_grid",
    "amplitude_timeseries", "assemble", "backend_name", "certify_pst",
    "check_phase_condition", "coupling_B", "coupling_J", "coupling_L",
    "couplings", "detect_fractional_revival", "dual_hahn",
    "eigenvalue_collisions", "eigvec_entry", "endpoint_amplitude_closed_form",
    "endpoint_transfer_probability", "family_params", "family_time",
    "first_family", "get_context", "grid_points", "hyp3f2_terminating",
    "identify_family", "jacobi_eigensystem", "log_gamma_signed", "mirror_site",
    "multi_pochhammer", "norm_h", "norm_r", "parse_rational", "pochhammer",
    "propagate_oracle", "propagate_row", "propagate_spectral",
    "propagator_matrix", "second_family", "sites", "tratnik_D",
    "validate_params", "weight_W2", "weight_w",
]
