"""Electro-optic single-sideband frequency shifting of single photons and HOM interference."""
from ._errors import DomainError
from .bessel import bessel_j, bessel_j_orders
from .hom import (
    DipCurve,
    FitResult,
    HomParams,
    calibrate_sigma,
    coincidence_rate,
    dip_curve,
    fit_visibility,
    misalignment_penalty,
    noisy_visibility,
    visibility,
    visibility_budget,
)
from .optimize import OptimizationResult, golden_section_max, maximize_conversion, trim_biases
from .oracle import QuadratureSpec, oracle_coincidence, residual_sideband_penalty
from .photons import GaussianComponent, PhotonSpectrum, apply_modulator, from_filter, overlap
from .sideband import (
    ModulatorConfig,
    SidebandSpectrum,
    conversion_efficiency,
    modulation_index,
    ossb_compose,
    paper_bias_preset,
    pm_sidebands,
    rf_voltage,
    suppression_ratio_db,
)

__version__ = "0.1.0"
