"""Low-rank autoregressive tensor completion for multivariate time series.

A sensor x time matrix is folded into a sensor x time-of-day x day tensor and
completed with ADMM, combining a (truncated) nuclear norm on every unfolding
with a per-series autoregressive penalty on the original matrix.
"""
from .tensor import TimeSeriesMatrix, fold, unfold, to_matrix, to_tensor
from .prox import svt, svt_truncated
from .ar import LagSet, ar_norm, build_design, default_lags, fit_coefficients
from .solver import ConvergenceReport, SolverConfig, impute
from .rolling import PredictionTask, make_window, predict
from .scenarios import MissingScenario, apply_mask, mape, rmse
from .io import DatasetDescriptor, load_csv, write_csv

__all__ = [
    "TimeSeriesMatrix",
    "fold",
    "unfold",
    "to_matrix",
    "to_tensor",
    "svt",
    "svt_truncated",
    "LagSet",
    "ar_norm",
    "build_design",
    "default_lags",
    "fit_coefficients",
    "ConvergenceReport",
    "SolverConfig",
    "impute",
    "PredictionTask",
    "make_window",
    "predict",
    "MissingScenario",
    "apply_mask",
    "mape",
    "rmse",
    "DatasetDescriptor",
    "load_csv",
    "write_csv",
]

__version__ = "0.1.0"
