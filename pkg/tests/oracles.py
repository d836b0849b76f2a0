"""Reference implementations used as test oracles.

Everything here is written from index formulas with explicit loops and does
not import the package's reshaping or update code.
"""
import numpy as np


def unfold_index(dims, k, idx):
    """(row, col) of tensor entry ``idx`` in the mode-``k`` unfolding (Kolda-Bader)."""
    row = idx[k - 1]
    col, stride = 0, 1
    for n in range(3):
        if n == k - 1:
            continue
        col += idx[n] * stride
        stride *= dims[n]
    return row, col


def unfold_loop(t, k):
    dims = t.shape
    rows = dims[k - 1]
    out = np.zeros((rows, t.size // rows))
    for idx in np.ndindex(*dims):
        r, c = unfold_index(dims, k, idx)
        out[r, c] = t[idx]
    return out


def fold_loop(mat, k, dims):
    out = np.zeros(dims)
    for idx in np.ndindex(*dims):
        r, c = unfold_index(dims, k, idx)
        out[idx] = mat[r, c]
    return out


def to_tensor_loop(y, season):
    M, N = y.shape
    J = N // season
    out = np.zeros((M, season, J))
    for m in range(M):
        for t in range(N):
            out[m, t % season, t // season] = y[m, t]
    return out


def to_matrix_loop(t):
    M, I, J = t.shape
    out = np.zeros((M, I * J))
    for m in range(M):
        for i in range(I):
            for j in range(J):
                out[m, j * I + i] = t[m, i, j]
    return out


def svt_ref(z, tau, theta=0):
    u, s, vt = np.linalg.svd(z, full_matrices=False)
    shrunk = np.array([s[i] if i < theta else max(s[i] - tau, 0.0) for i in range(s.size)])
    return u @ np.diag(shrunk) @ vt


def update_X_ref(qz, dual, k, alpha_k, rho, theta):
    target = unfold_loop(qz, k) - unfold_loop(dual, k) / rho
    return fold_loop(svt_ref(target, alpha_k / rho, theta), k, qz.shape)


def ar_fit_ref(x, a, lags):
    """Q_m a_m for every row, by explicit loops."""
    M, N = x.shape
    hd = max(lags)
    out = np.zeros((M, N - hd))
    for m in range(M):
        for t in range(hd, N):
            out[m, t - hd] = sum(a[m, i] * x[m, t - h] for i, h in enumerate(lags))
    return out


def z_head_ref(X, T, rho, hd):
    M, I, J = X[0].shape
    out = np.zeros((M, hd))
    for m in range(M):
        for t in range(hd):
            i, j = t % I, t // I
            out[m, t] = sum(X[k][m, i, j] + T[k][m, i, j] / rho for k in range(3)) / 3
    return out


def z_tail_ref(X, T, rho, lam, xhat, a, lags):
    M, I, J = X[0].shape
    N = I * J
    hd = max(lags)
    fit = ar_fit_ref(xhat, a, lags)
    out = np.zeros((M, N - hd))
    for m in range(M):
        for t in range(hd, N):
            i, j = t % I, t // I
            avg = sum(rho * X[k][m, i, j] + T[k][m, i, j] for k in range(3))
            out[m, t - hd] = avg / (3 * (rho + lam)) + lam / (rho + lam) * fit[m, t - hd]
    return out


def ar_norm_ref(z, a, lags):
    total = 0.0
    M, N = z.shape
    for m in range(M):
        for t in range(max(lags), N):
            r = z[m, t] - sum(a[m, i] * z[m, t - h] for i, h in enumerate(lags))
            total += r * r
    return total


class _Perm:
    """Precomputed index maps so the HaLRTC loop stays fast but loop-derived."""

    def __init__(self, dims):
        self.dims = dims
        self.maps = {}
        for k in (1, 2, 3):
            rows = dims[k - 1]
            flat = np.zeros((rows, int(np.prod(dims)) // rows), dtype=int)
            for idx in np.ndindex(*dims):
                r, c = unfold_index(dims, k, idx)
                flat[r, c] = np.ravel_multi_index(idx, dims)
            self.maps[k] = flat

    def unfold(self, t, k):
        return t.ravel()[self.maps[k]]

    def fold(self, mat, k):
        out = np.zeros(int(np.prod(self.dims)))
        out[self.maps[k].ravel()] = mat.ravel()
        return out.reshape(self.dims)


def halrtc_reference(values, mask, season, alpha, rho0, rho_max, iters):
    """Plain HaLRTC on the season-stacked tensor.

    Returns the list of recovered matrices, one per iteration.
    """
    M, N = values.shape
    dims = (M, season, N // season)
    perm = _Perm(dims)
    tidx = [(m, t % season, t // season) for m in range(M) for t in range(N)]

    def q(mat):
        out = np.zeros(dims)
        for (m, i, j), v in zip(tidx, mat.ravel()):
            out[m, i, j] = v
        return out

    def qinv(t):
        return np.array([t[m, i, j] for (m, i, j) in tidx]).reshape(M, N)

    obs = np.where(mask, values, 0.0)
    z = obs.copy()
    duals = [np.zeros(dims) for _ in range(3)]
    rho = rho0
    history = []
    for _ in range(iters):
        zt = q(z)
        xs = []
        for k in (1, 2, 3):
            target = perm.unfold(zt, k) - perm.unfold(duals[k - 1], k) / rho
            xs.append(perm.fold(svt_ref(target, alpha[k - 1] / rho), k))
        history.append(qinv(sum(a * x for a, x in zip(alpha, xs))))
        znew = qinv(sum(x + d / rho for x, d in zip(xs, duals)) / 3)
        z = np.where(mask, values, znew)
        zt = q(z)
        duals = [d + rho * (x - zt) for d, x in zip(duals, xs)]
        rho = min(1.05 * rho, rho_max)
    return history


def seasonal_ar_data(M=30, season=24, days=20, phi=0.8, noise=0.05, seed=0):
    """Rank-3 seasonal signal plus an AR(1) residual.

    The residual's stationary std is ``noise`` times the signal RMS. Returns
    ``(data, signal, sigma)``.
    """
    rng = np.random.default_rng(seed)
    i = np.arange(season)
    U = rng.uniform(0.5, 1.5, (M, 3))
    V = np.stack(
        [1 + 0.3 * np.sin(2 * np.pi * i / season),
         np.cos(2 * np.pi * i / season),
         np.sin(4 * np.pi * i / season)], axis=1)
    W = np.stack(
        [1 + 0.05 * rng.standard_normal(days),
         0.3 * (1 + 0.2 * rng.standard_normal(days)),
         0.2 * (1 + 0.2 * rng.standard_normal(days))], axis=1)
    tensor = 50 * np.einsum("mr,ir,jr->mij", U, V, W)
    signal = to_matrix_loop(tensor)
    sigma = noise * np.sqrt(np.mean(signal ** 2))
    resid = np.zeros_like(signal)
    resid[:, 0] = sigma * rng.standard_normal(M)
    innov = sigma * np.sqrt(1 - phi ** 2)
    for t in range(1, signal.shape[1]):
        resid[:, t] = phi * resid[:, t - 1] + innov * rng.standard_normal(M)
    return signal + resid, signal, sigma


def periodic_data(M=8, season=24, days=12, seed=0):
    """Noiseless series repeating exactly every ``season`` points."""
    rng = np.random.default_rng(seed)
    t = np.arange(season * days)
    base = rng.uniform(20, 60, (M, 1))
    amp = rng.uniform(5, 15, (M, 2))
    phase = rng.uniform(0, 2 * np.pi, (M, 2))
    return (base
            + amp[:, :1] * np.sin(2 * np.pi * t / season + phase[:, :1])
            + amp[:, 1:] * np.sin(4 * np.pi * t / season + phase[:, 1:]))
