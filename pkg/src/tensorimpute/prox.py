"""Singular value thresholding and its truncated (top-theta preserving) variant."""
import numpy as np

from .errors import DimensionError

# singular values below this fraction of the largest are treated as zero
NOISE_FLOOR = 1e-12


def _thin_svd(z):
    z = np.asarray(z, dtype=float)
    if z.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {z.shape}")
    if not np.all(np.isfinite(z)):
        raise ValueError("matrix contains non-finite entries")
    u, s, vt = np.linalg.svd(z, full_matrices=False)
    if s.size and s[0] > 0:
        s = np.where(s < NOISE_FLOOR * s[0], 0.0, s)
    return u, s, vt


def svt(z, tau):
    """Proximal operator of ``tau * ||X||_*``.

    Soft-thresholds every singular value of ``z`` by ``tau``; the result
    minimizes ``alpha*||X||_* + rho/2*||X - z||_F^2`` for ``tau = alpha/rho``.
    """
    return svt_truncated(z, tau, 0)


def svt_truncated(z, tau, theta):
    """Proximal step for the truncated nuclear norm.

    The ``theta`` largest singular values pass through untouched and the
    remaining ones are soft-thresholded by ``tau``. ``theta=0`` is plain SVT.

    Parameters
    ----------
    z : ndarray, shape (m, n)
    tau : float
        Shrinkage amount, nonnegative.
    theta : int
        Number of leading singular values left unshrunk; ``theta < min(m, n)``.
    """
    if tau < 0:
        raise ValueError(f"tau must be nonnegative, got {tau}")
    theta = int(theta)
    if theta < 0:
        raise ValueError(f"theta must be nonnegative, got {theta}")
    u, s, vt = _thin_svd(z)
    if theta and theta >= s.size:
        raise DimensionError(
            f"theta={theta} must be smaller than min(matrix dims)={s.size}"
        )
    shrink = np.full(s.shape, float(tau))
    shrink[:theta] = 0.0
    s = np.maximum(s - shrink, 0.0)
    keep = s > 0
    return (u[:, keep] * s[keep]) @ vt[keep]
