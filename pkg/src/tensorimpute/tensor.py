"""Dense third-order tensors and the matrix <-> tensor reshaping used by the solver.

Tensors are plain ``ndarray`` objects of shape ``(M, I, J)``: sensors,
points per season (time of day) and seasons (days). Unfoldings follow the
Kolda-Bader convention, where the remaining indices vary with the
lower-numbered mode fastest. Column ``t = j*I + i`` (zero based) of a time
series matrix maps to tensor entry ``(m, i, j)``, which makes the matrix form
of a tensor identical to its mode-1 unfolding.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError


@dataclass(frozen=True)
class TimeSeriesMatrix:
    """An M x N matrix of series values with an observation mask.

    Entries where ``mask`` is False carry no meaning; they are treated as
    zero wherever the observed part of the matrix is needed.
    """

    values: np.ndarray
    mask: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        mask = np.asarray(self.mask, dtype=bool)
        if values.ndim != 2:
            raise DimensionError(f"values must be 2-D, got shape {values.shape}")
        if values.shape != mask.shape:
            raise DimensionError(
                f"values {values.shape} and mask {mask.shape} differ in shape"
            )
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "mask", mask)

    @classmethod
    def fully_observed(cls, values):
        values = np.asarray(values, dtype=float)
        return cls(values, np.ones(values.shape, dtype=bool))

    @property
    def shape(self):
        return self.values.shape

    @property
    def M(self):
        return self.values.shape[0]

    @property
    def N(self):
        return self.values.shape[1]

    def observed(self):
        """Return the projection onto observed entries (zeros elsewhere)."""
        return np.where(self.mask, self.values, 0.0)

    def columns(self, start, stop):
        """Slice of columns ``start:stop`` (zero based, half open)."""
        return TimeSeriesMatrix(
            self.values[:, start:stop].copy(), self.mask[:, start:stop].copy()
        )


def _check_mode(k):
    if k not in (1, 2, 3):
        raise ValueError(f"mode must be 1, 2 or 3, got {k!r}")


def unfold(tensor, k):
    """Mode-``k`` matricization of a third-order tensor.

    Parameters
    ----------
    tensor : ndarray, shape (M, I, J)
    k : {1, 2, 3}

    Returns
    -------
    ndarray
        Matrix of shape ``(M, I*J)``, ``(I, M*J)`` or ``(J, M*I)``.
    """
    _check_mode(k)
    tensor = np.asarray(tensor)
    if tensor.ndim != 3:
        raise DimensionError(f"expected a 3-D tensor, got shape {tensor.shape}")
    return np.reshape(np.moveaxis(tensor, k - 1, 0), (tensor.shape[k - 1], -1), order="F")


def fold(matrix, k, dims):
    """Inverse of :func:`unfold` for mode ``k`` and tensor shape ``dims``."""
    _check_mode(k)
    matrix = np.asarray(matrix)
    dims = tuple(int(d) for d in dims)
    if len(dims) != 3:
        raise ValueError(f"dims must have three entries, got {dims}")
    rows = dims[k - 1]
    cols = int(np.prod(dims)) // rows if rows else 0
    if matrix.shape != (rows, cols):
        raise DimensionError(
            f"mode-{k} unfolding of a {dims} tensor is {rows}x{cols}, "
            f"got {matrix.shape}"
        )
    rest = [d for i, d in enumerate(dims) if i != k - 1]
    moved = np.reshape(matrix, (rows, *rest), order="F")
    return np.moveaxis(moved, 0, k - 1)


def to_tensor(y, season):
    """Stack an M x (I*J) matrix into an M x I x J tensor.

    ``y`` may be a :class:`TimeSeriesMatrix` (its values are used as is) or
    a plain array. Use :func:`tensorimpute.io.trim_to_seasons` first when the
    column count is not a multiple of ``season``.
    """
    values = y.values if isinstance(y, TimeSeriesMatrix) else np.asarray(y)
    if values.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {values.shape}")
    M, N = values.shape
    if season < 1 or N % season:
        raise DimensionError(f"{N} time points do not split into seasons of {season}")
    return np.reshape(values, (M, season, N // season), order="F")


def to_matrix(tensor):
    """Flatten an M x I x J tensor back to its M x (I*J) time series matrix."""
    return unfold(tensor, 1)
