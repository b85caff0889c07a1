"""Spectral boundary-integral toolkit for elastostatic spheres.

Closed-form Neumann-Poincare spectra for the Lame system on spheres, the
core-shell-matrix transmission solver exhibiting anomalous localized
resonance, and brute-force quadrature / finite-difference oracles that
cross-check every closed form.
"""

from .harmonics import ModeIndex, SurfacePoint, a_coeff, eval_solid_mode, eval_trace_mode, eval_ylm
from .kelvin import KernelCoeffs, LameParams, gamma_laplace, kelvin_matrix, traction_kernel
from .oracle import FDStencil, QuadratureRule
from .potentials import (
    CoefficientSpectrum,
    NPEigenvalue,
    np_apply,
    np_apply_decomposed,
    np_eigenvalue,
    scalar_sl_multiplier,
)
from .transmission import (
    EnergyReport,
    PlasmonicConfig,
    ShellGeometry,
    SourceSpectrum,
    choose_n0,
    classify_calr,
    critical_radius,
    plasmonic_params,
    solve_mode,
    synth_source,
)

__all__ = [
    "CoefficientSpectrum",
    "EnergyReport",
    "FDStencil",
    "KernelCoeffs",
    "LameParams",
    "ModeIndex",
    "NPEigenvalue",
    "PlasmonicConfig",
    "QuadratureRule",
    "ShellGeometry",
    "SourceSpectrum",
    "SurfacePoint",
    "a_coeff",
    "choose_n0",
    "classify_calr",
    "critical_radius",
    "eval_solid_mode",
    "eval_trace_mode",
    "eval_ylm",
    "gamma_laplace",
    "kelvin_matrix",
    "np_apply",
    "np_apply_decomposed",
    "np_eigenvalue",
    "plasmonic_params",
    "scalar_sl_multiplier",
    "solve_mode",
    "synth_source",
    "traction_kernel",
]

__version__ = "0.1.0"
