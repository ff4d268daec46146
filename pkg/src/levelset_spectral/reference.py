"""Brute-force reference computations for cross-checking the pipeline.

Everything here is deliberately simple and independent of the main code
paths: connected components come from union-find over an exhaustive pair
scan, and the reference spectrum is assembled densely and solved with a
different LAPACK driver than the main eigensolver.  These are the ground
truth for the exact spectral invariants (zero-eigenvalue multiplicity =
number of components).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import SimilarityGraph

__all__ = [
    "ComponentLabeling",
    "connected_components",
    "min_intercomponent_distance",
    "dense_reference_spectrum",
]

_DENSE_REFERENCE_LIMIT = 2000


class _UnionFind:
    """Union-find with path compression."""

    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, i):
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[rj] = ri


@dataclass
class ComponentLabeling:
    """Connected-component ids, canonical by smallest member index."""

    labels: np.ndarray
    count: int


def connected_components(points, h: float) -> ComponentLabeling:
    """Components of the graph with edges at distance strictly below h.

    The strict inequality matches the open support of the bump kernel, so
    these components are exactly the blocks of the similarity matrix.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    n = pts.shape[0]
    if n < 1:
        raise ValueError("need at least one point")
    if h <= 0:
        raise ValueError("h must be positive")

    uf = _UnionFind(n)
    h2 = h * h
    for i in range(n - 1):
        sq = ((pts[i + 1:] - pts[i]) ** 2).sum(axis=1)
        for j in np.flatnonzero(sq < h2):
            uf.union(i, i + 1 + int(j))

    labels = np.empty(n, dtype=int)
    ids: dict[int, int] = {}
    for i in range(n):
        root = uf.find(i)
        if root not in ids:
            ids[root] = len(ids)
        labels[i] = ids[root]
    return ComponentLabeling(labels=labels, count=len(ids))


def min_intercomponent_distance(points, labeling: ComponentLabeling) -> float:
    """Smallest distance between points of distinct components (empirical d_min)."""
    if labeling.count < 2:
        raise ValueError("d_min undefined: only one component")
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    best = np.inf
    for i in range(pts.shape[0] - 1):
        sq = ((pts[i + 1:] - pts[i]) ** 2).sum(axis=1)
        other = labeling.labels[i + 1:] != labeling.labels[i]
        if other.any():
            best = min(best, float(sq[other].min()))
    return float(np.sqrt(best))


def dense_reference_spectrum(graph: SimilarityGraph) -> np.ndarray:
    """Full ascending spectrum of I - S by an independent dense route.

    The matrix is assembled entrywise from the sparse triplets and solved
    with numpy's eigvalsh (divide and conquer), whereas the main path
    scales in sparse form and uses scipy's subset solver.
    """
    n = graph.size
    if n > _DENSE_REFERENCE_LIMIT:
        raise ValueError(
            f"dense reference is limited to {_DENSE_REFERENCE_LIMIT} points, got {n}")
    coo = graph.kernel_matrix.tocoo()
    kernel = np.zeros((n, n))
    kernel[coo.row, coo.col] = coo.data
    degrees = kernel.sum(axis=1)
    shifted = np.eye(n) - kernel / np.sqrt(np.outer(degrees, degrees))
    return np.linalg.eigvalsh(shifted)
