"""Epigraph-lifted POCS minimization and parameter-free TV denoising."""

from epipocs.baseline import ROFParams, chambolle_denoise, tune_lambda
from epipocs.costs import (
    CostFunction,
    Entropic,
    FilteredVariation,
    L1Norm,
    TotalVariation,
    entropic_subgradient,
    entropic_value,
    fv_subgradient,
    fv_value,
    l1_subgradient,
    l1_value,
    tv_subgradient,
    tv_value,
)
from epipocs.denoise import DenoiseOptions, DenoiseResult, denoise_trace_csv, epigraph_denoise
from epipocs.errors import DomainError, ImageFormatError, NumericError
from epipocs.geometry import (
    Hyperplane,
    LevelSet,
    LiftedPoint,
    MinimizeResult,
    alternating_pocs_minimize,
    project_onto_hyperplane,
    project_onto_level_set,
    supporting_hyperplane,
)
from epipocs.images import read_image, write_image
from epipocs.noise import NoiseSpec, add_noise, snr_db

__version__ = "0.1.0"
