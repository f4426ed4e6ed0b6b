"""Lloyd's k-means with seeded kmeans++ or random initialization."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TooFewPoints


@dataclass(frozen=True)
class KMeansConfig:
    k: int = 10
    max_iters: int = 100
    seed: int = 0
    init: str = "kmeans++"   # or "random"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.init not in ("kmeans++", "random"):
            raise ValueError(f"unknown init {self.init!r}")


def _sq_dists(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centroids[None, :, :]
    return np.einsum("nkd,nkd->nk", diff, diff)


def _init_centroids(points: np.ndarray, cfg: KMeansConfig) -> np.ndarray:
    rng = np.random.default_rng(cfg.seed)
    n = len(points)
    if cfg.init == "random":
        return points[rng.choice(n, size=cfg.k, replace=False)].copy()
    centroids = [points[rng.integers(n)]]
    for _ in range(cfg.k - 1):
        d2 = _sq_dists(points, np.array(centroids)).min(axis=1)
        total = d2.sum()
        if total == 0:
            centroids.append(points[rng.integers(n)])
            continue
        centroids.append(points[rng.choice(n, p=d2 / total)])
    return np.array(centroids)


def kmeans(points: np.ndarray, cfg: KMeansConfig = KMeansConfig()):
    """Returns (assignments, centroids, inertia); ties go to the lowest
    centroid index and inertia never increases across iterations."""
    points = np.asarray(points, dtype=float)
    if cfg.k > len(points):
        raise TooFewPoints(f"k={cfg.k} exceeds {len(points)} points")
    centroids = _init_centroids(points, cfg)
    assignments = None
    for _ in range(cfg.max_iters):
        d2 = _sq_dists(points, centroids)
        new_assignments = d2.argmin(axis=1)  # argmin takes the lowest index on ties
        if assignments is not None and np.array_equal(new_assignments, assignments):
            break
        assignments = new_assignments
        for c in range(cfg.k):
            members = points[assignments == c]
            if len(members):
                centroids[c] = members.mean(axis=0)
    inertia = float(_sq_dists(points, centroids)[np.arange(len(points)), assignments].sum())
    return assignments, centroids, inertia


def kmeans_history(points: np.ndarray, cfg: KMeansConfig = KMeansConfig()):
    """Like kmeans() but also returns the per-iteration inertia trail."""
    points = np.asarray(points, dtype=float)
    if cfg.k > len(points):
        raise TooFewPoints(f"k={cfg.k} exceeds {len(points)} points")
    centroids = _init_centroids(points, cfg)
    assignments = None
    history = []
    for _ in range(cfg.max_iters):
        d2 = _sq_dists(points, centroids)
        new_assignments = d2.argmin(axis=1)
        history.append(float(d2[np.arange(len(points)), new_assignments].sum()))
        if assignments is not None and np.array_equal(new_assignments, assignments):
            break
        assignments = new_assignments
        for c in range(cfg.k):
            members = points[assignments == c]
            if len(members):
                centroids[c] = members.mean(axis=0)
    inertia = float(_sq_dists(points, centroids)[np.arange(len(points)), assignments].sum())
    return assignments, centroids, inertia, history
