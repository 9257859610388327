"""Kraskov k-nearest-neighbor mutual information for continuous samples.

Implements the first Kraskov estimator with max-norm distances in the
joint space: psi(k) + psi(N) - <psi(n_x + 1) + psi(n_y + 1)>, in nats.
Neighbor counts in the marginal spaces are strict (< eps), matching the
estimator's derivation; callers should jitter data with duplicates first.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial import cKDTree
from scipy.special import digamma

from infoproc.errors import DegenerateDistanceError, DomainError


def _as_cloud(a) -> np.ndarray:
    x = np.asarray(a, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise DomainError("point cloud must be an (N, d) array")
    if not np.isfinite(x).all():
        raise DomainError("point cloud contains non-finite entries")
    return x


def jitter(points, relative_amplitude: float = 1e-10, seed: int | None = None) -> np.ndarray:
    """Break ties by adding uniform noise scaled per dimension.

    Amplitude is ``relative_amplitude`` times the per-dimension standard
    deviation (1 for constant dimensions, so they still become distinct).
    Zero amplitude returns the input unchanged; fixed seed, fixed output.
    """
    x = _as_cloud(points)
    if relative_amplitude == 0.0:
        return x.copy()
    scale = x.std(axis=0)
    scale = np.where(scale > 0, scale, 1.0)
    rng = np.random.default_rng(seed)
    noise = rng.uniform(-1.0, 1.0, size=x.shape) * (relative_amplitude * scale)
    return x + noise


def _strict_counts(tree: cKDTree, pts: np.ndarray, eps: np.ndarray) -> np.ndarray:
    # count neighbors at distance strictly below eps; the query radius is
    # nudged one ulp down so the k-th joint neighbor itself is excluded
    radii = np.nextafter(eps, 0.0)
    counts = tree.query_ball_point(pts, radii, p=np.inf, return_length=True)
    return np.asarray(counts) - 1  # drop the point itself


def ksg_mi(x, y, k: int = 3) -> float:
    """Mutual information estimate (nats) between two sample clouds."""
    x = _as_cloud(x)
    y = _as_cloud(y)
    if x.shape[0] != y.shape[0]:
        raise DomainError("x and y must have the same number of samples")
    n = x.shape[0]
    if k < 1 or k >= n:
        raise DomainError(f"need 1 <= k < N, got k={k}, N={n}")
    z = np.hstack([x, y])
    dist, _ = cKDTree(z).query(z, k=k + 1, p=np.inf)
    eps = dist[:, k]
    if (eps == 0.0).any():
        raise DegenerateDistanceError(
            "duplicate joint points give zero k-th neighbor distance; jitter the data"
        )
    nx = _strict_counts(cKDTree(x), x, eps)
    ny = _strict_counts(cKDTree(y), y, eps)
    return float(digamma(k) + digamma(n) - np.mean(digamma(nx + 1) + digamma(ny + 1)))
