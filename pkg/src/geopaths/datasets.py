"""Deterministic toy datasets and dataset plumbing.

Every generator draws from ``numpy.random.default_rng(seed)`` (PCG64), one
independent stream per call, so outputs are bit-reproducible across
platforms.  ``noise_var`` arguments are variances, not standard deviations.

The semicircle is left in raw coordinates (its tests rely on exact radii);
the curly, two-moons, and sphere sets are standardized per dimension after
noise, with the (mean, scale) pair stored on the dataset so the raw
construction can be recovered.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Free construction constants: where the lower half-circle goes.
TWO_MOONS_SHIFT = (1.0, 0.5)


@dataclass
class Dataset:
    """Point cloud with its generation seed and optional standardization.

    ``standardization`` is (mean, scale) such that
    ``raw = points * scale + mean``; None when the data was never scaled.
    """

    points: np.ndarray
    seed: int | None = None
    standardization: tuple | None = None

    def __post_init__(self):
        self.points = np.atleast_2d(np.asarray(self.points, dtype=float))
        if not np.all(np.isfinite(self.points)):
            raise ValueError("dataset contains non-finite entries")

    def __len__(self):
        return self.points.shape[0]

    @property
    def dim(self):
        return self.points.shape[1]

    def raw(self):
        """Undo standardization; returns a copy of the stored points if
        the dataset was never standardized."""
        if self.standardization is None:
            return self.points.copy()
        mean, scale = self.standardization
        return self.points * scale + mean


def standardize(points):
    """Zero-mean, unit-variance columns.

    Returns (standardized, mean, scale) with scale the population standard
    deviation per dimension.  Applying it twice is the identity on the
    already-standardized output (to rounding).
    """
    points = np.asarray(points, dtype=float)
    mean = points.mean(axis=0)
    scale = points.std(axis=0)
    if np.any(scale == 0):
        raise ValueError("cannot standardize a dimension with zero variance")
    return (points - mean) / scale, mean, scale


def gen_semicircle(n, noise_var=0.01, seed=0):
    """Upper unit semicircle with additive Gaussian noise, unstandardized.

    Angles are uniform on [0, pi]; each coordinate gets independent
    N(0, noise_var) noise.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, np.pi, n)
    pts = np.column_stack([np.cos(theta), np.sin(theta)])
    if noise_var > 0:
        pts = pts + rng.normal(0.0, np.sqrt(noise_var), pts.shape)
    return Dataset(points=pts, seed=seed)


def gen_curly(n, noise_var=0.01, seed=0):
    """Full circle with the lower half reflected upward (y -> -y).

    Noise is added to the reflected construction, then the result is
    standardized.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, 2.0 * np.pi, n)
    pts = np.column_stack([np.cos(theta), np.sin(theta)])
    lower = pts[:, 1] < 0
    pts[lower, 1] = -pts[lower, 1]
    if noise_var > 0:
        pts = pts + rng.normal(0.0, np.sqrt(noise_var), pts.shape)
    std_pts, mean, scale = standardize(pts)
    return Dataset(points=std_pts, seed=seed, standardization=(mean, scale))


def gen_two_moons(n, noise_var=0.01, seed=0):
    """Circle whose lower half is translated to interleave with the upper.

    The shift is ``TWO_MOONS_SHIFT``; noise then standardization follow.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, 2.0 * np.pi, n)
    pts = np.column_stack([np.cos(theta), np.sin(theta)])
    lower = pts[:, 1] < 0
    pts[lower] += np.asarray(TWO_MOONS_SHIFT)
    if noise_var > 0:
        pts = pts + rng.normal(0.0, np.sqrt(noise_var), pts.shape)
    std_pts, mean, scale = standardize(pts)
    return Dataset(points=std_pts, seed=seed, standardization=(mean, scale))


def gen_sphere(n, noise_var=0.01, seed=0, upper_only=False):
    """Uniform points on the unit sphere in R^3 (normalized Gaussians).

    ``upper_only`` keeps the hemisphere with nonnegative last coordinate by
    reflection, preserving uniformity.  Noise then standardization follow.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(n, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    if upper_only:
        pts[:, 2] = np.abs(pts[:, 2])
    if noise_var > 0:
        pts = pts + rng.normal(0.0, np.sqrt(noise_var), pts.shape)
    std_pts, mean, scale = standardize(pts)
    return Dataset(points=std_pts, seed=seed, standardization=(mean, scale))


def embed_orthogonal(data, target_dim, noise_var=0.0, seed=0, restandardize=True):
    """Map a dataset into R^target_dim by a random orthonormal basis.

    The basis comes from the QR factorization of a seeded Gaussian matrix,
    so the map preserves pairwise distances exactly.  The embedded cloud is
    then re-standardized and gets fresh Gaussian noise; pass
    ``restandardize=False`` (with ``noise_var=0``) to inspect the bare
    isometric embedding.
    """
    src = data.points
    if target_dim < src.shape[1]:
        raise ValueError(
            f"target_dim {target_dim} is below the source dimension {src.shape[1]}"
        )
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.normal(size=(target_dim, src.shape[1])))
    embedded = src @ q.T
    standardization = None
    if restandardize:
        embedded, mean, scale = standardize(embedded)
        standardization = (mean, scale)
    if noise_var > 0:
        embedded = embedded + rng.normal(0.0, np.sqrt(noise_var), embedded.shape)
    return Dataset(points=embedded, seed=seed, standardization=standardization)


def save_dataset_csv(dataset, path, header=False):
    """One row per point, comma separated; optional x0,x1,... header."""
    head = ",".join(f"x{d}" for d in range(dataset.dim)) if header else ""
    np.savetxt(path, dataset.points, delimiter=",", header=head, comments="")


def load_dataset_csv(path, header=False):
    pts = np.loadtxt(path, delimiter=",", skiprows=1 if header else 0, ndmin=2)
    return Dataset(points=pts, seed=None)


GENERATORS = {
    "semicircle": gen_semicircle,
    "curly": gen_curly,
    "two_moons": gen_two_moons,
    "sphere": gen_sphere,
}


__all__ = [
    "Dataset",
    "standardize",
    "gen_semicircle",
    "gen_curly",
    "gen_two_moons",
    "gen_sphere",
    "embed_orthogonal",
    "save_dataset_csv",
    "load_dataset_csv",
    "GENERATORS",
    "TWO_MOONS_SHIFT",
]
