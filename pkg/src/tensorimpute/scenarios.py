"""Missing-data scenarios and the two error metrics used to score imputations."""
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionError
from .tensor import TimeSeriesMatrix, to_matrix

KINDS = ("rm", "nm")


@dataclass(frozen=True)
class MissingScenario:
    """How to hide entries of a complete matrix.

    ``kind="rm"`` hides each entry independently with probability ``rate``.
    ``kind="nm"`` hides whole blocks: with ``axis="day"`` every
    (sensor, day) pair is dropped with probability ``rate`` and all of its
    ``I`` points go missing; ``axis="time_of_day"`` instead drops
    (sensor, time-of-day) pairs across every day.
    """

    kind: str
    rate: float
    seed: int = 0
    axis: str = "day"

    def __post_init__(self):
        kind = self.kind.lower()
        if kind not in KINDS:
            raise ConfigError(f"kind must be one of {KINDS}, got {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if not 0 <= self.rate < 1:
            raise ConfigError(f"rate must lie in [0, 1), got {self.rate}")
        if self.axis not in ("day", "time_of_day"):
            raise ConfigError(f"axis must be 'day' or 'time_of_day', got {self.axis!r}")


def apply_mask(y, scenario, season=None):
    """Hide entries of ``y`` according to ``scenario``.

    Values are never changed, only the mask. Entries already missing in
    ``y`` stay missing and are not counted as hidden.

    Returns
    -------
    masked : TimeSeriesMatrix
    hidden : ndarray of bool
        True where an observed entry was hidden.
    """
    rng = np.random.default_rng(scenario.seed)
    M, N = y.shape
    if scenario.kind == "rm":
        drop = rng.random((M, N)) < scenario.rate
    else:
        if season is None or season < 1 or N % season:
            raise DimensionError(
                f"non-random missing needs {N} time points to split into seasons of {season}"
            )
        J = N // season
        if scenario.axis == "day":
            days = rng.random((M, J)) < scenario.rate
            block = np.broadcast_to(days[:, None, :], (M, season, J))
        else:
            slots = rng.random((M, season)) < scenario.rate
            block = np.broadcast_to(slots[:, :, None], (M, season, J))
        drop = to_matrix(block)
    hidden = drop & y.mask
    return TimeSeriesMatrix(y.values.copy(), y.mask & ~hidden), hidden


def _pair(truth, est):
    truth = np.asarray(truth, dtype=float).ravel()
    est = np.asarray(est, dtype=float).ravel()
    if truth.shape != est.shape:
        raise DimensionError(f"{truth.size} truth values vs {est.size} estimates")
    return truth, est


def mape(truth, est):
    """Mean absolute percentage error (in percent) over entries with nonzero truth."""
    truth, est = _pair(truth, est)
    keep = truth != 0
    if not keep.any():
        raise ValueError("MAPE is undefined: no nonzero truth values")
    return float(np.mean(np.abs((truth[keep] - est[keep]) / truth[keep])) * 100)


def rmse(truth, est):
    truth, est = _pair(truth, est)
    if truth.size == 0:
        raise ValueError("RMSE of an empty set")
    return float(np.sqrt(np.mean((truth - est) ** 2)))
