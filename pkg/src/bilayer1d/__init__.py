"""Scattering, bound levels and squeezing limits of a two-layer structure.

A numpy/scipy library for the stationary wave equation
-psi'' + V psi = k^2 psi with a piecewise-constant potential made of two
slabs and a gap.  It provides exact transfer matrices and amplitudes,
bound-level ladders, and the zero-width (squeezing) limits in which the
structure converges to a point interaction.
"""

from .core import (
    EV_TO_INV_NM2,
    DoubleLayerSpec,
    LayerSpec,
    UnitSystem,
    Wavenumber,
    as_wavenumber,
    convert_energy,
    validate_spec,
)
from .kernels import SERIES_CUTOFF, cos_sqrt, sinc_sqrt, tanc_sqrt, tanhc
from .xfer import (
    NotAnEigenvalueError,
    PiecewiseWave,
    RTCoefficients,
    ScatteringData,
    ScatteringPoleError,
    TransferMatrix,
    amplitude_grid,
    amplitude_ratio_expressions,
    bound_state_residual,
    cancellation_gap,
    divergence_residual,
    layer_matrix,
    matrix_entries,
    reflection_transmission,
    scattering_data,
    scattering_wavefunction,
    total_matrix,
)
from .bound import (
    BoundLadder,
    ChiProblem,
    LadderReport,
    build_chi_problem,
    find_roots,
    poles_of_y,
    verify_ladder,
    y_of_chi,
)
from .limits import (
    LimitChars,
    OffResonanceError,
    SqueezedInteraction,
    ThetaAlpha,
    jump_conditions,
    squeezed_bound_level,
    squeezed_scattering,
    theta_alpha,
    x_residual,
    y_residual,
)
from .squeeze import (
    DivergentLimitError,
    InteractionReport,
    PairingResult,
    SqueezeFamily,
    SweepResult,
    classify_first_angle,
    classify_region,
    classify_second_angle,
    delta_prime_pairing,
    delta_prime_region,
    eps_log_grid,
    forced_branch,
    gamma_strength,
    interaction_limit,
    limit_chars_of,
    realize,
    resonance_residual_of,
    stable_level_index,
    sweep_ladder,
)
from .oracle import (
    IntegrationConfig,
    integrate_bound,
    integrate_scatter,
    oracle_entries,
    scatter_grid,
)
from . import probes

__version__ = "0.1.0"

__all__ = [
    "EV_TO_INV_NM2",
    "SERIES_CUTOFF",
    "BoundLadder",
    "ChiProblem",
    "DivergentLimitError",
    "DoubleLayerSpec",
    "IntegrationConfig",
    "InteractionReport",
    "LadderReport",
    "LayerSpec",
    "LimitChars",
    "NotAnEigenvalueError",
    "OffResonanceError",
    "PairingResult",
    "PiecewiseWave",
    "RTCoefficients",
    "ScatteringData",
    "ScatteringPoleError",
    "SqueezeFamily",
    "SqueezedInteraction",
    "SweepResult",
    "ThetaAlpha",
    "TransferMatrix",
    "UnitSystem",
    "Wavenumber",
    "amplitude_grid",
    "amplitude_ratio_expressions",
    "as_wavenumber",
    "bound_state_residual",
    "build_chi_problem",
    "cancellation_gap",
    "classify_first_angle",
    "classify_region",
    "classify_second_angle",
    "convert_energy",
    "cos_sqrt",
    "delta_prime_pairing",
    "delta_prime_region",
    "divergence_residual",
    "eps_log_grid",
    "find_roots",
    "forced_branch",
    "gamma_strength",
    "integrate_bound",
    "integrate_scatter",
    "interaction_limit",
    "jump_conditions",
    "layer_matrix",
    "limit_chars_of",
    "matrix_entries",
    "oracle_entries",
    "poles_of_y",
    "probes",
    "realize",
    "reflection_transmission",
    "resonance_residual_of",
    "scatter_grid",
    "scattering_data",
    "scattering_wavefunction",
    "sinc_sqrt",
    "squeezed_bound_level",
    "squeezed_scattering",
    "stable_level_index",
    "sweep_ladder",
    "tanc_sqrt",
    "tanhc",
    "theta_alpha",
    "total_matrix",
    "validate_spec",
    "verify_ladder",
    "x_residual",
    "y_of_chi",
    "y_residual",
]
