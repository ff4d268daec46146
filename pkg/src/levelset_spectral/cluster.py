"""Partitioning of the embedded points and label bookkeeping.

k-means (k-means++ seeding, Lloyd iterations, best of several restarts)
runs in the feature space.  Labels map back to the full sample through the
retained index set; discarded points get the NOISE sentinel.  The module
also provides the alignment diagnostic (how close the embedding is to a
linear image of the component indicators) and adjusted-Rand agreement
scoring.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .density import LevelSetExtraction

__all__ = [
    "NOISE",
    "KMeansResult",
    "ClusteringResult",
    "AlignmentReport",
    "DegenerateEmbeddingError",
    "kmeans",
    "assemble_labels",
    "align_to_indicators",
    "adjusted_rand_index",
]

NOISE = -1  # label for points discarded by the level-set filter


class DegenerateEmbeddingError(ValueError):
    """Feature matrix is rank deficient; indicators cannot be matched."""


@dataclass
class KMeansResult:
    assignments: np.ndarray  # per-row cluster id in 0..k-1
    centroids: np.ndarray    # k x ell
    inertia: float           # within-cluster sum of squared distances
    iterations: int


@dataclass
class ClusteringResult:
    """Full-sample labels: cluster ids on retained points, NOISE elsewhere."""

    labels: np.ndarray


@dataclass
class AlignmentReport:
    """Least-squares transform taking feature vectors to indicator targets."""

    xi: np.ndarray      # ell x ell
    residual: float     # max_j |xi @ rho_j - e_{k(j)}|_2


def _plus_plus_init(X, k, rng):
    n = X.shape[0]
    centroids = np.empty((k, X.shape[1]))
    centroids[0] = X[rng.integers(n)]
    sq = ((X - centroids[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = sq.sum()
        if total > 0:
            pick = rng.choice(n, p=sq / total)
        else:
            pick = rng.integers(n)  # all mass on already-chosen locations
        centroids[j] = X[pick]
        sq = np.minimum(sq, ((X - centroids[j]) ** 2).sum(axis=1))
    return centroids


def _lloyd(X, centroids, max_iter):
    """Lloyd iterations until assignments stabilize; returns inertia history too."""
    n, k = X.shape[0], centroids.shape[0]
    assignments = None
    history = []
    iterations = 0
    for iterations in range(1, max_iter + 1):
        sq = ((X[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=-1)
        new_assignments = sq.argmin(axis=1)
        history.append(float(sq[np.arange(n), new_assignments].sum()))
        if assignments is not None and np.array_equal(new_assignments, assignments):
            break
        assignments = new_assignments
        for j in range(k):
            members = assignments == j
            if members.any():
                centroids[j] = X[members].mean(axis=0)
            else:
                # re-seed an empty cluster at the worst-fitted point
                worst = sq[np.arange(n), assignments].argmax()
                centroids[j] = X[worst]
                assignments[worst] = j
    inertia = float(((X - centroids[assignments]) ** 2).sum())
    return assignments, centroids, inertia, iterations, history


def kmeans(features, k: int, restarts: int = 10, seed: int = 0,
           max_iter: int = 300) -> KMeansResult:
    """Best of `restarts` seeded k-means++ / Lloyd runs, by inertia.

    Convergence is declared when assignments stop changing (or at
    max_iter).  Ties between restarts go to the earlier restart, so output
    is deterministic for a fixed seed.
    """
    X = np.atleast_2d(np.asarray(features, dtype=float))
    if k < 1:
        raise ValueError("k must be >= 1")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    distinct = np.unique(X, axis=0).shape[0]
    if k > distinct:
        raise ValueError(f"k exceeds distinct points ({k} > {distinct})")

    best = None
    for child in np.random.SeedSequence(seed).spawn(restarts):
        rng = np.random.default_rng(child)
        centroids = _plus_plus_init(X, k, rng)
        assignments, centroids, inertia, iterations, _ = _lloyd(X, centroids, max_iter)
        if best is None or inertia < best.inertia:
            best = KMeansResult(assignments=assignments, centroids=centroids,
                                inertia=inertia, iterations=iterations)
    return best


def assemble_labels(extraction: LevelSetExtraction, km: KMeansResult) -> ClusteringResult:
    """Expand k-means assignments to the full sample, NOISE for discarded points."""
    if km.assignments.shape[0] != extraction.retained.shape[0]:
        raise ValueError(
            f"assignment length {km.assignments.shape[0]} does not match "
            f"{extraction.retained.shape[0]} retained points")
    labels = np.full(extraction.density_values.shape[0], NOISE, dtype=int)
    labels[extraction.retained] = km.assignments
    return ClusteringResult(labels=labels)


def align_to_indicators(embedded, component_labels) -> AlignmentReport:
    """Least-squares transform xi with xi @ rho_j ~ e_{k(j)}.

    When the ell feature columns span the component indicators (the
    separated-component case) the residual is numerically zero; its size
    measures how far the embedding is from an exact indicator encoding.
    """
    rows = np.atleast_2d(np.asarray(embedded, dtype=float))
    labels = np.asarray(component_labels, dtype=int)
    ell = rows.shape[1]
    if labels.shape != (rows.shape[0],):
        raise ValueError("one component label per embedded row required")
    distinct = np.unique(labels)
    if not (distinct.size == ell and distinct.min() == 0 and distinct.max() == ell - 1):
        raise ValueError(
            f"component labels must cover 0..{ell - 1} to match the feature dimension")

    targets = np.eye(ell)[labels]
    solution, _, rank, _ = np.linalg.lstsq(rows, targets, rcond=None)
    if rank < ell:
        raise DegenerateEmbeddingError("degenerate embedding: feature matrix is rank deficient")
    residual = float(np.linalg.norm(rows @ solution - targets, axis=1).max())
    return AlignmentReport(xi=solution.T, residual=residual)


def adjusted_rand_index(a, b) -> float:
    """Chance-corrected agreement of two labelings, NOISE entries excluded pairwise.

    1.0 iff the partitions are identical on the comparable points.
    """
    a = np.asarray(a, dtype=int)
    b = np.asarray(b, dtype=int)
    if a.shape != b.shape:
        raise ValueError("label vectors must have equal length")
    keep = (a != NOISE) & (b != NOISE)
    a, b = a[keep], b[keep]
    if a.size < 2:
        raise ValueError("fewer than 2 comparable points")

    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    table = np.zeros((ai.max() + 1, bi.max() + 1), dtype=np.int64)
    np.add.at(table, (ai, bi), 1)

    def comb2(x):
        return x * (x - 1) // 2

    sum_cells = comb2(table).sum()
    sum_rows = comb2(table.sum(axis=1)).sum()
    sum_cols = comb2(table.sum(axis=0)).sum()
    expected = sum_rows * sum_cols / comb2(a.size)
    maximum = (sum_rows + sum_cols) / 2.0
    if maximum == expected:
        return 1.0  # both partitions degenerate and identical in structure
    return float((sum_cells - expected) / (maximum - expected))
