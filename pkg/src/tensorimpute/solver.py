"""ADMM imputer for low-rank autoregressive tensor completion.

The observed matrix ``Y`` (M x I*J) is stacked into an M x I x J tensor. Three
auxiliary tensors ``X_k`` carry a (truncated) nuclear norm on their mode-k
unfolding, the matrix ``Z`` carries the autoregressive penalty and the
observation constraint, and dual tensors ``T_k`` tie ``X_k`` to ``Z``. The
recovered matrix is the weighted average of the ``X_k``.
"""
import logging
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .ar import LagSet, default_lags, fit_all, lagged_prediction
from .errors import ConfigError, DimensionError
from .prox import svt_truncated
from .tensor import TimeSeriesMatrix, fold, to_matrix, to_tensor, unfold

logger = logging.getLogger(__name__)

RHO_GROWTH = 1.05


@dataclass(frozen=True)
class SolverConfig:
    """Parameters of :func:`impute`.

    ``lags=None`` selects :func:`~tensorimpute.ar.default_lags` for the
    season length, and ``rho_max=None`` means ``1e5 * rho0``. The AR weight
    is ``lambda = c0 * rho``; with ``lambda_tracks_rho`` it follows the
    growing ``rho``, otherwise it stays at ``c0 * rho0``.
    """

    alpha: tuple = (1 / 3, 1 / 3, 1 / 3)
    rho0: float = 1e-4
    rho_max: float = None
    c0: float = 0.0
    theta: int = 0
    epsilon: float = 1e-4
    max_iters: int = 200
    seed: int = 0
    lags: LagSet = None
    lambda_tracks_rho: bool = False

    def resolve(self, season):
        """Fill the season-dependent defaults and validate."""
        cfg = self
        if cfg.lags is None:
            cfg = replace(cfg, lags=default_lags(season))
        elif not isinstance(cfg.lags, LagSet):
            cfg = replace(cfg, lags=LagSet(tuple(cfg.lags)))
        if cfg.rho_max is None:
            cfg = replace(cfg, rho_max=1e5 * cfg.rho0)
        cfg = replace(cfg, alpha=tuple(float(a) for a in cfg.alpha), theta=int(cfg.theta))
        cfg.validate()
        return cfg

    def validate(self, dims=None):
        alpha = np.asarray(self.alpha, dtype=float)
        if alpha.shape != (3,) or np.any(alpha < 0) or abs(alpha.sum() - 1) > 1e-9:
            raise ConfigError(f"alpha must be 3 nonnegative weights summing to 1, got {self.alpha}")
        if not self.rho0 > 0:
            raise ConfigError(f"rho0 must be positive, got {self.rho0}")
        if self.rho_max is not None and not self.rho_max > self.rho0:
            raise ConfigError(f"rho_max ({self.rho_max}) must exceed rho0 ({self.rho0})")
        if self.c0 < 0:
            raise ConfigError(f"c0 must be nonnegative, got {self.c0}")
        if self.theta < 0:
            raise ConfigError(f"theta must be nonnegative, got {self.theta}")
        if not self.epsilon > 0:
            raise ConfigError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iters < 1:
            raise ConfigError(f"max_iters must be positive, got {self.max_iters}")
        if dims is not None:
            M, I, J = dims
            total = M * I * J
            smallest = min(min(n, total // n) for n in dims)
            if self.theta >= smallest:
                raise ConfigError(
                    f"theta={self.theta} must be below the smallest unfolding side {smallest}"
                )
            if self.lags is not None and self.lags.max_lag >= I * J:
                raise ConfigError(
                    f"maximum lag {self.lags.max_lag} needs more than {I * J} time points"
                )


@dataclass
class SolverState:
    """Iterates of the ADMM loop, as seen by the per-iteration callback."""

    X: np.ndarray  # (3, M, I, J)
    Z: np.ndarray  # (M, N)
    T: np.ndarray  # (3, M, I, J)
    A: np.ndarray  # (M, d)
    rho: float
    iteration: int = 0
    residual: float = np.inf
    xhat: np.ndarray = None


@dataclass
class ConvergenceReport:
    iterations: int
    residual: float
    rho: float
    converged: bool
    wall_time: float
    residual_history: list = field(default_factory=list, repr=False)


def update_X(qz, dual, k, alpha_k, rho, theta=0):
    """Proximal update of the mode-``k`` auxiliary tensor.

    ``fold_k(D(unfold_k(Q(Z)) - unfold_k(T_k)/rho))`` where ``D`` soft-thresholds
    all but the ``theta`` leading singular values by ``alpha_k/rho``.
    """
    target = unfold(qz, k) - unfold(dual, k) / rho
    return fold(svt_truncated(target, alpha_k / rho, theta), k, qz.shape)


def update_Z_head(X, T, rho, hd):
    """First ``hd`` columns of ``Z``: mean over modes of ``X_k + T_k/rho``."""
    total = sum(to_matrix(X[k] + T[k] / rho) for k in range(3))
    return total[:, :hd] / 3


def update_Z_tail(X, T, rho, lam, ar_fit, hd):
    """Columns ``hd:`` of ``Z``, blending the mode average with the AR fit.

    ``ar_fit`` is the matrix of ``Q_m a_m`` rows, see
    :func:`~tensorimpute.ar.lagged_prediction`.
    """
    total = sum(to_matrix(rho * X[k] + T[k]) for k in range(3))
    return total[:, hd:] / (3 * (rho + lam)) + (lam / (rho + lam)) * ar_fit


def enforce_observations(z, y):
    """Overwrite the observed entries of ``z`` with the data."""
    z = np.asarray(z, dtype=float)
    if z.shape != y.shape:
        raise DimensionError(f"matrix {z.shape} does not match data {y.shape}")
    return np.where(y.mask, y.values, z)


def update_duals(T, X, qz, rho):
    """Dual ascent ``T_k + rho*(X_k - Q(Z))`` for all three modes at once."""
    return T + rho * (X - qz)


def impute(y, season, config=None, callback=None):
    """Recover the missing entries of ``y``.

    Parameters
    ----------
    y : TimeSeriesMatrix
        M x N data with ``N`` a multiple of ``season``.
    season : int
        Points per season (the tensor's second dimension).
    config : SolverConfig, optional
    callback : callable, optional
        Called as ``callback(state)`` after every iteration, before ``rho``
        grows. The state is live; copy what you keep.

    Returns
    -------
    xhat : ndarray, shape (M, N)
    report : ConvergenceReport
        ``converged`` is False when ``max_iters`` ran out first; ``xhat`` then
        holds the last iterate.
    """
    if not isinstance(y, TimeSeriesMatrix):
        raise TypeError("y must be a TimeSeriesMatrix")
    config = (config or SolverConfig()).resolve(season)
    M, N = y.shape
    if season < 1 or N % season:
        raise DimensionError(f"{N} time points do not split into seasons of {season}")
    dims = (M, season, N // season)
    config.validate(dims)
    observed = y.observed()
    obs_norm = np.linalg.norm(observed)
    if obs_norm == 0:
        raise DimensionError("no observed entries (or all observed values are zero)")

    lags = config.lags
    hd = lags.max_lag
    rng = np.random.default_rng(config.seed)
    state = SolverState(
        X=np.zeros((3, *dims)),
        Z=observed.copy(),
        T=np.zeros((3, *dims)),
        A=rng.uniform(-0.01, 0.01, size=(M, lags.d)),
        rho=float(config.rho0),
    )
    xhat_prev = state.Z.copy()
    history = []
    converged = False
    start = time.perf_counter()

    for it in range(1, config.max_iters + 1):
        rho = state.rho
        lam = config.c0 * (rho if config.lambda_tracks_rho else config.rho0)
        qz = to_tensor(state.Z, season)
        for k in range(3):
            state.X[k] = update_X(qz, state.T[k], k + 1, config.alpha[k], rho, config.theta)
        xhat = to_matrix(np.tensordot(config.alpha, state.X, axes=1))

        z = np.empty_like(state.Z)
        z[:, :hd] = update_Z_head(state.X, state.T, rho, hd)
        ar_fit = lagged_prediction(xhat, state.A, lags)
        z[:, hd:] = update_Z_tail(state.X, state.T, rho, lam, ar_fit, hd)
        state.Z = enforce_observations(z, y)
        # A only enters through lam; skip the M least-squares fits when it is zero
        if config.c0 > 0:
            state.A = fit_all(state.Z, xhat, lags)
        state.T = update_duals(state.T, state.X, to_tensor(state.Z, season), rho)

        residual = float(np.linalg.norm(xhat - xhat_prev) / obs_norm)
        history.append(residual)
        state.iteration, state.residual, state.xhat = it, residual, xhat
        if callback is not None:
            callback(state)
        xhat_prev = xhat
        state.rho = min(RHO_GROWTH * rho, config.rho_max)
        # an all-zero estimate means every singular value was thresholded away,
        # so a zero step says nothing about convergence
        if residual < config.epsilon and np.any(xhat):
            converged = True
            break

    report = ConvergenceReport(
        iterations=state.iteration,
        residual=state.residual,
        rho=rho,
        converged=converged,
        wall_time=time.perf_counter() - start,
        residual_history=history,
    )
    if not converged:
        logger.warning(
            "no convergence after %d iterations (residual %.3g >= %.3g)",
            report.iterations, report.residual, config.epsilon,
        )
    else:
        logger.info("converged in %d iterations", report.iterations)
    return xhat_prev, report
