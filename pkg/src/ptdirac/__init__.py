"""Relativistic scattering and spectrum of a PT-symmetric square well.

Transmission/reflection coefficients, the (non-unitary) S matrix, real and
complex bound-state energies, and the symmetry-breaking threshold of the
imaginary depth, for a Dirac particle in (1+1) dimensions with the well as
the time component of a vector potential. Natural units throughout.
"""

from ._kernels import BACKEND as kernel_backend
from .errors import (
    BandEdgeDegeneracy,
    DegenerateParameterization,
    EmptyGrid,
    IntegrationFailure,
    NoBreakingDetected,
    PTDiracError,
    ScaleViolation,
    SingularOmega,
    TransmissionPole,
)
from .limits import (
    LimitReport,
    NonrelReport,
    nonrelativistic_limit_check,
    real_well_bound_state_function,
    real_well_limit_check,
    real_well_reference_matrix,
    schrodinger_matching_matrix,
    space_component_case,
)
from .matching import (
    MatchingMatrix,
    OmegaMatrix,
    SolutionCoefficients,
    matching_matrix_closed_form,
    matching_matrix_ode,
    matching_matrix_product,
    omega_matrix,
    propagate_coefficients,
)
from .potential import (
    PotentialSpec,
    Region,
    RegionKinematics,
    WellParameterization,
    potential_at,
    pt_conjugate_check,
    region_kinematics,
    well_parameterization,
)
from .scattering import (
    FluxBehavior,
    FluxClassification,
    Resonance,
    ScanResult,
    ScatteringObservables,
    energy_scan,
    find_transmission_resonances,
    flux_gain_classification,
    scattering_observables,
)
from .spectrum import (
    ComplexZeroSearch,
    CriticalV1,
    Spectrum,
    bound_state_function,
    bound_state_values,
    complex_m22_zeros,
    critical_v1,
    m22_continued,
    real_bound_states,
)

__version__ = "1.0.0"

__all__ = [
    "kernel_backend",
    "PTDiracError",
    "BandEdgeDegeneracy",
    "DegenerateParameterization",
    "SingularOmega",
    "IntegrationFailure",
    "TransmissionPole",
    "EmptyGrid",
    "NoBreakingDetected",
    "ScaleViolation",
    "PotentialSpec",
    "Region",
    "RegionKinematics",
    "WellParameterization",
    "potential_at",
    "pt_conjugate_check",
    "region_kinematics",
    "well_parameterization",
    "MatchingMatrix",
    "OmegaMatrix",
    "SolutionCoefficients",
    "omega_matrix",
    "matching_matrix_closed_form",
    "matching_matrix_product",
    "matching_matrix_ode",
    "propagate_coefficients",
    "ScatteringObservables",
    "ScanResult",
    "Resonance",
    "FluxBehavior",
    "FluxClassification",
    "scattering_observables",
    "energy_scan",
    "find_transmission_resonances",
    "flux_gain_classification",
    "Spectrum",
    "CriticalV1",
    "ComplexZeroSearch",
    "bound_state_function",
    "bound_state_values",
    "real_bound_states",
    "critical_v1",
    "complex_m22_zeros",
    "m22_continued",
    "LimitReport",
    "NonrelReport",
    "real_well_reference_matrix",
    "real_well_bound_state_function",
    "real_well_limit_check",
    "schrodinger_matching_matrix",
    "nonrelativistic_limit_check",
    "space_component_case",
]
