"""CSV matrices, key=value config files and plain-text reports."""
import csv
from dataclasses import dataclass, fields

import numpy as np

from .ar import LagSet
from .errors import ConfigError, DimensionError, ParseError
from .solver import SolverConfig
from .tensor import TimeSeriesMatrix

DEFAULT_MISSING = ("", "nan")

# config keys in report order; alpha is split into three scalar keys
CONFIG_KEYS = (
    "alpha1", "alpha2", "alpha3", "rho0", "rho_max", "c0", "theta",
    "epsilon", "max_iters", "seed", "lags", "lambda_tracks_rho",
)


@dataclass(frozen=True)
class DatasetDescriptor:
    path: str
    season: int
    delimiter: str = ","
    missing_token: str = None

    def load(self):
        if self.season < 1:
            raise ConfigError(f"season length must be positive, got {self.season}")
        return load_csv(self.path, self.delimiter, self.missing_token)


def _is_missing(cell, missing_token):
    cell = cell.strip().lower()
    if missing_token is not None and cell == missing_token.strip().lower():
        return True
    return cell in DEFAULT_MISSING


def load_csv(path, delimiter=",", missing_token=None):
    """Read a sensors x time-points CSV into a :class:`TimeSeriesMatrix`.

    Empty cells, ``nan`` (any case) and ``missing_token`` become unobserved.
    """
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh, delimiter=delimiter) if row]
    if not rows:
        raise ParseError(f"{path}: file is empty")
    width = len(rows[0])
    values = np.zeros((len(rows), width))
    mask = np.ones((len(rows), width), dtype=bool)
    for r, row in enumerate(rows):
        if len(row) != width:
            raise ParseError(
                f"{path}: row {r + 1} has {len(row)} columns, expected {width}"
            )
        for c, cell in enumerate(row):
            if _is_missing(cell, missing_token):
                mask[r, c] = False
                continue
            try:
                values[r, c] = float(cell)
            except ValueError:
                raise ParseError(
                    f"{path}: cannot parse {cell!r} at row {r + 1}, column {c + 1}"
                ) from None
    return TimeSeriesMatrix(values, mask)


def write_csv(matrix, path, delimiter=","):
    """Write a matrix as CSV with round-trip precision.

    A :class:`TimeSeriesMatrix` has its unobserved cells left empty; boolean
    arrays are written as 0/1.
    """
    if isinstance(matrix, TimeSeriesMatrix):
        values, mask = matrix.values, matrix.mask
    else:
        values = np.asarray(matrix)
        if values.ndim != 2:
            raise DimensionError(f"expected a matrix, got shape {values.shape}")
        mask = np.ones(values.shape, dtype=bool)
    is_bool = values.dtype == bool
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
        for vrow, mrow in zip(values, mask):
            if is_bool:
                writer.writerow([str(int(v)) for v in vrow])
            else:
                writer.writerow([format(v, ".17g") if m else "" for v, m in zip(vrow, mrow)])


def trim_to_seasons(y, season):
    """Drop the oldest ``N mod season`` columns so whole seasons remain."""
    if season < 1:
        raise ConfigError(f"season length must be positive, got {season}")
    if y.N < season:
        raise DimensionError(f"{y.N} time points are fewer than one season of {season}")
    extra = y.N % season
    return y.columns(extra, y.N)


def read_config(path):
    """Parse ``key=value`` lines; ``#`` starts a comment."""
    values = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParseError(f"{path}: line {n} is not key=value: {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            values[key] = value
    return values


def _parse_bool(text):
    lowered = str(text).strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def build_config(values):
    """Turn a mapping of config keys to strings into a :class:`SolverConfig`.

    Missing keys keep their defaults; ``lags`` is a comma-separated list.
    """
    unknown = set(values) - set(CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    defaults = SolverConfig()
    kwargs = {}
    try:
        alpha = list(defaults.alpha)
        for i in range(3):
            key = f"alpha{i + 1}"
            if key in values:
                alpha[i] = float(values[key])
        kwargs["alpha"] = tuple(alpha)
        for key in ("rho0", "rho_max", "c0", "epsilon"):
            if key in values and str(values[key]).strip().lower() not in ("", "none"):
                kwargs[key] = float(values[key])
        for key in ("theta", "max_iters", "seed"):
            if key in values:
                kwargs[key] = int(values[key])
        if "lags" in values and str(values["lags"]).strip().lower() not in ("", "none", "default"):
            kwargs["lags"] = LagSet(tuple(int(h) for h in str(values["lags"]).split(",")))
        if "lambda_tracks_rho" in values:
            kwargs["lambda_tracks_rho"] = _parse_bool(values["lambda_tracks_rho"])
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad config value: {exc}") from None
    config = SolverConfig(**kwargs)
    config.validate()
    return config


def config_items(config):
    """Every config key with its resolved value, in report order."""
    items = [(f"alpha{i + 1}", repr(float(a))) for i, a in enumerate(config.alpha)]
    for f in fields(config):
        if f.name == "alpha":
            continue
        value = getattr(config, f.name)
        if f.name == "lags":
            value = "default" if value is None else ",".join(str(h) for h in value)
        elif isinstance(value, bool):
            value = str(value).lower()
        else:
            value = repr(value)
        items.append((f.name, value))
    return items


def write_report(path, items):
    """Write ``key: value`` lines."""
    with open(path, "w") as fh:
        for key, value in items:
            fh.write(f"{key}: {value}\n")


def read_report(path):
    out = {}
    with open(path) as fh:
        for line in fh:
            if ": " in line:
                key, value = line.rstrip("\n").split(": ", 1)
                out[key] = value
    return out
