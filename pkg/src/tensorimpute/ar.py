"""Per-series autoregression over a fixed lag set.

Each series ``m`` is modelled as ``x[m, t] = sum_i a[m, i] * x[m, t - h_i]``.
Residuals exist only for ``t >= h_d`` (zero based), where every lag points
inside the series.
"""
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionError

# relative singular-value cutoff of the least-squares pseudo-inverse
PINV_RCOND = 1e-10


@dataclass(frozen=True)
class LagSet:
    """Strictly increasing positive lags ``h_1 < ... < h_d``."""

    lags: tuple

    def __post_init__(self):
        lags = tuple(int(h) for h in self.lags)
        if not lags:
            raise ConfigError("lag set must not be empty")
        if lags[0] < 1:
            raise ConfigError(f"lags must be positive, got {lags}")
        if any(b <= a for a, b in zip(lags, lags[1:])):
            raise ConfigError(f"lags must be strictly increasing, got {lags}")
        object.__setattr__(self, "lags", lags)

    def __len__(self):
        return len(self.lags)

    def __iter__(self):
        return iter(self.lags)

    @property
    def d(self):
        return len(self.lags)

    @property
    def max_lag(self):
        return self.lags[-1]

    def check_length(self, n):
        if n <= self.max_lag:
            raise DimensionError(
                f"series of length {n} is too short for maximum lag {self.max_lag}"
            )


def default_lags(season):
    """Short-range lags 1..6 plus lags around one season, ``season-2 .. season+3``.

    Overlapping or non-positive lags (short seasons) are dropped.
    """
    near = range(1, 7)
    seasonal = range(season - 2, season + 4)
    return LagSet(tuple(sorted({h for h in (*near, *seasonal) if h >= 1})))


def build_design(x_row, lags):
    """Lagged design matrix of one series.

    Row ``r`` corresponds to time ``t = h_d + r`` and holds
    ``x[t - h_1], ..., x[t - h_d]``.

    Returns
    -------
    ndarray, shape (N - h_d, d)
    """
    x_row = np.asarray(x_row, dtype=float)
    if x_row.ndim != 1:
        raise DimensionError(f"expected a 1-D series, got shape {x_row.shape}")
    n = x_row.size
    lags.check_length(n)
    hd = lags.max_lag
    return np.stack([x_row[hd - h:n - h] for h in lags], axis=1)


def lagged_prediction(x, a, lags):
    """Row-wise ``Q_m a_m``: the AR one-step fit of every series.

    Parameters
    ----------
    x : ndarray, shape (M, N)
        Matrix the design is built on.
    a : ndarray, shape (M, d)

    Returns
    -------
    ndarray, shape (M, N - h_d)
    """
    x = np.asarray(x, dtype=float)
    a = np.asarray(a, dtype=float)
    M, n = x.shape
    lags.check_length(n)
    if a.shape != (M, lags.d):
        raise DimensionError(f"coefficients must be {(M, lags.d)}, got {a.shape}")
    hd = lags.max_lag
    out = np.zeros((M, n - hd))
    for i, h in enumerate(lags):
        out += a[:, i:i + 1] * x[:, hd - h:n - h]
    return out


def fit_coefficients(z_tail, design):
    """Minimum-norm least-squares coefficients ``pinv(design) @ z_tail``."""
    design = np.asarray(design, dtype=float)
    z_tail = np.asarray(z_tail, dtype=float)
    if design.ndim != 2 or design.shape[0] == 0:
        raise DimensionError("design matrix has no rows")
    if z_tail.shape != (design.shape[0],):
        raise DimensionError(
            f"response of length {z_tail.shape} does not match {design.shape[0]} rows"
        )
    coef, *_ = np.linalg.lstsq(design, z_tail, rcond=PINV_RCOND)
    return coef


def fit_all(z, x, lags):
    """Refit every row: design from ``x``, response from the tail of ``z``."""
    z = np.asarray(z, dtype=float)
    x = np.asarray(x, dtype=float)
    hd = lags.max_lag
    return np.stack(
        [fit_coefficients(z[m, hd:], build_design(x[m], lags)) for m in range(z.shape[0])]
    )


def ar_norm(z, a, lags):
    """Sum of squared AR residuals over all series and all ``t >= h_d``."""
    z = np.asarray(z, dtype=float)
    if z.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {z.shape}")
    resid = z[:, lags.max_lag:] - lagged_prediction(z, a, lags)
    return float(np.sum(resid * resid))
