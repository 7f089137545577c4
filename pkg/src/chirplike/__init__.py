"""Chirp-like signal model: synthesis, estimation, order selection, simulation."""

__version__ = "0.1.0"

from .asymptotics import AsymReport, asym_variances, c_constant, sigma_block_chirp, sigma_block_sin
from .designmat import (
    DegenerateDesignError,
    DesignMatrix,
    build_chirp,
    build_full,
    build_sin,
    criterion_R,
    criterion_R1,
    criterion_R2,
    profile_linear,
)
from .estimators import (
    FitResult,
    StageRecord,
    bic_value,
    fit_joint_one,
    fit_sequential_multi,
    fit_sequential_one,
    select_order_bic,
)
from .model import ChirpLikeParams, MultiParams, NoiseSpec, gen_noise, signal_values, synthesize
from .montecarlo import (
    ExperimentConfig,
    ExperimentReport,
    empirical_trig_average,
    replicate_seed,
    run_experiment,
)
from .optimize import (
    Bracket,
    NonConvergenceError,
    argmax_I1_grid,
    argmax_I2_grid,
    fourier_grid,
    minimize_2d,
    minimize_scalar,
    periodogram_I1,
    periodogram_I2,
)

__all__ = [
    "AsymReport",
    "Bracket",
    "ChirpLikeParams",
    "DegenerateDesignError",
    "DesignMatrix",
    "ExperimentConfig",
    "ExperimentReport",
    "FitResult",
    "MultiParams",
    "NoiseSpec",
    "NonConvergenceError",
    "StageRecord",
    "argmax_I1_grid",
    "argmax_I2_grid",
    "asym_variances",
    "bic_value",
    "build_chirp",
    "build_full",
    "build_sin",
    "c_constant",
    "criterion_R",
    "criterion_R1",
    "criterion_R2",
    "empirical_trig_average",
    "fit_joint_one",
    "fit_sequential_multi",
    "fit_sequential_one",
    "fourier_grid",
    "gen_noise",
    "minimize_2d",
    "minimize_scalar",
    "periodogram_I1",
    "periodogram_I2",
    "profile_linear",
    "replicate_seed",
    "run_experiment",
    "select_order_bic",
    "sigma_block_chirp",
    "sigma_block_sin",
    "signal_values",
    "synthesize",
]
