"""Steady-state entanglement and dark-mode diagnostics for a driven
two-cavity, two-resonator optomechanical network."""

__version__ = "0.1.0"

from .darkmode import (
    CmRelReport,
    DarkModeReport,
    classify_configuration,
    cm_rel_analysis,
    dark_mode_conditions,
)
from .entanglement import (
    EntanglementReport,
    ModePair,
    all_pair_report,
    log_negativity,
    reduce_covariance,
)
from .lyapunov import CovarianceMatrix, lyapunov_residual, solve_lyapunov, solve_lyapunov_kron
from .model import (
    DriftDiffusion,
    NetworkParams,
    StabilityVerdict,
    build_drift_diffusion,
    check_stability,
    load_params,
)
from .sweep import Axis, Grid, SweepResult, SweepSpec, figure_preset, run_sweep

__all__ = [
    "Axis",
    "CmRelReport",
    "CovarianceMatrix",
    "DarkModeReport",
    "DriftDiffusion",
    "EntanglementReport",
    "Grid",
    "ModePair",
    "NetworkParams",
    "StabilityVerdict",
    "SweepResult",
    "SweepSpec",
    "all_pair_report",
    "build_drift_diffusion",
    "check_stability",
    "classify_configuration",
    "cm_rel_analysis",
    "dark_mode_conditions",
    "figure_preset",
    "load_params",
    "log_negativity",
    "lyapunov_residual",
    "reduce_covariance",
    "run_sweep",
    "solve_lyapunov",
    "solve_lyapunov_kron",
]
