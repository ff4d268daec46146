"""Eigendecomposition of I - S, cluster counting, and the feature embedding.

The transition matrix Q and the symmetric normalization S share their
spectrum, so the numerically stable route is a dense symmetric solve of
I - S.  Eigenvalues of I - S near zero correspond to eigenvalue-1
eigenvectors of Q; their number estimates the number of clusters, and the
matching Q-eigenvectors (obtained by dividing S-eigenvectors by sqrt of
the degrees) give each retained point a feature vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .graph import SimilarityGraph, bump_kernel, symmetric_matrix

__all__ = [
    "SpectralEmbedding",
    "ZeroCountReport",
    "EigensolverError",
    "OutsideSupportError",
    "eigendecompose",
    "count_zero_eigenvalues",
    "embed",
    "extend_eigenfunction",
]

_DENSE_LIMIT = 5000


class EigensolverError(RuntimeError):
    """The symmetric eigensolver failed to converge."""


class OutsideSupportError(ValueError):
    """Query point is at distance >= h from every retained point."""


@dataclass
class SpectralEmbedding:
    """Smallest eigenpairs of I - S with the converted Q-eigenvectors.

    eigenvalues are ascending eigenvalues of I - S (so the corresponding
    Q-eigenvalues are 1 - eigenvalues, descending).  Columns of
    s_eigenvectors are orthonormal; q_eigenvectors[:, k] is the
    Q-eigenvector D^{-1/2} u_k.  points and h carry the graph context for
    out-of-sample evaluation.
    """

    eigenvalues: np.ndarray
    s_eigenvectors: np.ndarray
    q_eigenvectors: np.ndarray
    degrees: np.ndarray
    points: np.ndarray
    h: float

    @property
    def size(self) -> int:
        return self.q_eigenvectors.shape[0]

    @property
    def n_pairs(self) -> int:
        return self.eigenvalues.size


@dataclass
class ZeroCountReport:
    """Number of eigenvalues of I - S below tolerance (the cluster count)."""

    tolerance: float
    count: int
    eigenvalues_head: np.ndarray  # first min(50, size) computed eigenvalues


def eigendecompose(graph: SimilarityGraph, m: int) -> SpectralEmbedding:
    """The m smallest eigenpairs of I - S, with a deterministic sign.

    Each S-eigenvector is flipped so its entry of largest magnitude is
    positive (first such entry on ties), making repeated runs on identical
    input bit-identical.
    """
    n = graph.size
    if not 1 <= m <= n:
        raise ValueError(f"m must be in [1, {n}], got {m}")
    if n > _DENSE_LIMIT:
        raise ValueError(
            f"dense eigendecomposition is limited to {_DENSE_LIMIT} points, got {n}")

    shifted = np.eye(n) - symmetric_matrix(graph).toarray()
    try:
        eigenvalues, vectors = scipy.linalg.eigh(shifted, subset_by_index=(0, m - 1))
    except scipy.linalg.LinAlgError as exc:
        raise EigensolverError(
            f"symmetric eigensolver failed on a {n}x{n} matrix (h={graph.h}): {exc}"
        ) from exc

    for k in range(vectors.shape[1]):
        lead = np.argmax(np.abs(vectors[:, k]))
        if vectors[lead, k] < 0:
            vectors[:, k] = -vectors[:, k]

    q_vectors = vectors / np.sqrt(graph.degrees)[:, None]
    return SpectralEmbedding(
        eigenvalues=eigenvalues,
        s_eigenvectors=vectors,
        q_eigenvectors=q_vectors,
        degrees=graph.degrees,
        points=graph.points,
        h=graph.h,
    )


def count_zero_eigenvalues(embedding: SpectralEmbedding, tol: float) -> ZeroCountReport:
    """Count computed eigenvalues of I - S strictly below tol.

    This is the estimated number of clusters: each connected component of
    the graph contributes exactly one zero eigenvalue.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    head = embedding.eigenvalues[: min(50, embedding.size)]
    count = int(np.count_nonzero(embedding.eigenvalues < tol))
    return ZeroCountReport(tolerance=float(tol), count=count, eigenvalues_head=head)


def embed(embedding: SpectralEmbedding, ell: int) -> np.ndarray:
    """Feature vectors: row j holds the j-th entries of the top ell Q-eigenvectors."""
    if not 1 <= ell <= embedding.n_pairs:
        raise ValueError(f"ell must be in [1, {embedding.n_pairs}], got {ell}")
    return embedding.q_eigenvectors[:, :ell]


def extend_eigenfunction(x, embedding: SpectralEmbedding, k: int) -> float:
    """Out-of-sample value of the k-th eigenfunction at x (Nystrom style).

    Returns sum_j V_kj k_h(X_j - x) / sum_j k_h(X_j - x), the empirical
    transition average of the eigenvector.  At a retained point X_i this
    equals (Q V_k)(i) = lambda_k V_ki, i.e. the eigenvector entry scaled by
    its Q-eigenvalue; for the eigenvalue-1 eigenvectors it interpolates the
    eigenvector exactly.
    """
    if not 0 <= k < embedding.n_pairs:
        raise ValueError(f"eigen index k must be in [0, {embedding.n_pairs}), got {k}")
    x = np.asarray(x, dtype=float)
    weights = bump_kernel(embedding.points - x, embedding.h)
    total = float(np.sum(weights))
    if total <= 0.0:
        raise OutsideSupportError(
            "outside graph support: query is at distance >= h from every retained point")
    return float(weights @ embedding.q_eigenvectors[:, k]) / total
