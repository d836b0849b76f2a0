"""Rolling multi-window prediction by repeated tensor completion.

Window ``s`` (1-based) covers the ``I*J`` columns ending at ``t + s*tau``; its
last ``tau`` columns are hidden and recovered by :func:`~tensorimpute.solver.impute`.
Every window is cut from the raw data, so predictions never feed later windows.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionError
from .solver import impute
from .tensor import TimeSeriesMatrix


@dataclass(frozen=True)
class PredictionTask:
    """Window layout for rolling prediction.

    Attributes
    ----------
    t : int
        Number of columns before the first predicted column.
    S : int
        Number of rolling windows.
    tau : int
        Columns predicted per window.
    season, days : int
        Tensor shape ``I x J`` of each window; a window spans ``I*J`` columns.
    """

    t: int
    S: int
    tau: int
    season: int
    days: int

    @property
    def width(self):
        return self.season * self.days

    def validate(self, n_columns=None):
        if self.tau < 1 or self.S < 1:
            raise ConfigError(f"tau and S must be positive, got tau={self.tau}, S={self.S}")
        if self.season < 1 or self.days < 1:
            raise ConfigError(f"season and days must be positive, got {self.season}, {self.days}")
        if self.tau > self.width:
            raise ConfigError(f"tau={self.tau} exceeds the window width {self.width}")
        if self.t + self.tau < self.width:
            raise DimensionError(
                f"first window needs {self.width} columns of history but only "
                f"{self.t + self.tau} precede its end"
            )
        if n_columns is not None and self.t + self.S * self.tau > n_columns:
            raise DimensionError(
                f"{self.S} windows of {self.tau} after column {self.t} run past "
                f"the {n_columns} available columns"
            )

    @classmethod
    def with_full_history(cls, t, S, tau, season):
        """Use as many whole seasons as fit before the end of the first window."""
        return cls(t, S, tau, season, (t + tau) // season)


def make_window(y, task, s):
    """Data for window ``s`` (1-based) with its last ``tau`` columns hidden."""
    if not 1 <= s <= task.S:
        raise DimensionError(f"window index {s} outside 1..{task.S}")
    task.validate(y.N)
    stop = task.t + s * task.tau
    window = y.columns(stop - task.width, stop)
    window.mask[:, -task.tau:] = False
    return window


def predict(y, task, config=None, n_jobs=1):
    """Predict ``S*tau`` future columns window by window.

    Parameters
    ----------
    y : TimeSeriesMatrix
    task : PredictionTask
    config : SolverConfig, optional
        Shared by all windows.
    n_jobs : int
        Windows to solve concurrently; the output does not depend on it.

    Returns
    -------
    prediction : ndarray, shape (M, S*tau)
        Block ``s`` holds columns ``t + (s-1)*tau .. t + s*tau - 1`` of ``y``.
    reports : list of ConvergenceReport
        One per window; unconverged windows still contribute their last iterate.
    """
    if not isinstance(y, TimeSeriesMatrix):
        raise TypeError("y must be a TimeSeriesMatrix")
    task.validate(y.N)

    def solve(s):
        xhat, report = impute(make_window(y, task, s), task.season, config)
        return xhat[:, -task.tau:], report

    windows = range(1, task.S + 1)
    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            results = list(pool.map(solve, windows))
    else:
        results = [solve(s) for s in windows]
    prediction = np.concatenate([block for block, _ in results], axis=1)
    return prediction, [report for _, report in results]
