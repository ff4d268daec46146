"""Similarity graph over retained points with a compact-support bump kernel.

Pairwise weights come from the smooth bump

    k(x) = exp(-1 / (1 - |x|)^2)   for |x| < 1,   0 otherwise,

scaled to radius h.  Because the support is an open ball, the weight matrix
K is exactly sparse: K(i, j) > 0 if and only if |X_i - X_j| < h.  The
diagonal is included (k(0) = 1/e), which keeps every degree positive even
for isolated points.  Row normalization of K gives a Markov transition
matrix Q; the symmetric normalization S = D^{-1/2} K D^{-1/2} is conjugate
to Q and is what the eigensolver consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np
import scipy.sparse as sparse

__all__ = [
    "bump_kernel",
    "SimilarityGraph",
    "build_graph",
    "markov_matrix",
    "symmetric_matrix",
]

# exp(-1/(1-r)^2) underflows double precision for r > ~0.963 although it is
# mathematically positive; clamp to the smallest subnormal so the support of
# the kernel stays exactly the open ball.
_SMALLEST_POSITIVE = float(np.finfo(float).smallest_subnormal)


def _bump_profile(r):
    """Bump value as a function of r = |u| / h (array or scalar)."""
    r = np.asarray(r, dtype=float)
    out = np.zeros(r.shape)
    inside = r < 1.0
    if np.any(inside):
        with np.errstate(over="ignore", divide="ignore"):
            w = np.exp(-1.0 / np.square(1.0 - r[inside]))
        out[inside] = np.maximum(w, _SMALLEST_POSITIVE)
    return out


def bump_kernel(u, h: float):
    """Evaluate the bump similarity at offset(s) u for scale h.

    Accepts a single offset vector of shape (d,) or a batch (..., d).
    Values lie in [0, 1/e]; exactly 0 outside the open ball |u| < h and
    strictly positive inside it.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    u = np.asarray(u, dtype=float)
    r = np.sqrt(np.sum(u * u, axis=-1)) / h
    out = _bump_profile(r)
    return float(out) if out.ndim == 0 else out


@dataclass
class SimilarityGraph:
    """Symmetric sparse similarity matrix over retained points."""

    kernel_matrix: sparse.csr_matrix  # K, exactly symmetric, diagonal included
    degrees: np.ndarray               # row sums of K, all positive
    h: float
    points: np.ndarray                # retained coordinates, one row per vertex
    point_index_map: np.ndarray       # retained row -> original sample index

    @property
    def size(self) -> int:
        return self.degrees.size


def _pair_block(pts, idx_a, idx_b, h):
    """Edges between two index blocks: (rows, cols, weights) with distance < h."""
    diff = pts[idx_a][:, None, :] - pts[idx_b][None, :, :]
    sq = np.einsum("ijk,ijk->ij", diff, diff)
    keep = sq < h * h
    if not np.any(keep):
        return None
    ai, bj = np.nonzero(keep)
    weights = _bump_profile(np.sqrt(sq[ai, bj]) / h)
    return idx_a[ai], idx_b[bj], weights


def build_graph(points, h: float, point_index_map=None) -> SimilarityGraph:
    """Build the similarity graph via grid binning with cell width h.

    Each unordered pair at distance < h is evaluated once and mirrored, so
    the result is symmetric to the bit.  Cost is O(n * average neighbors);
    a brute-force O(n^2) path exists in the reference module for testing.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    n, d = pts.shape
    if n < 1:
        raise ValueError("graph needs at least one point")
    if h <= 0:
        raise ValueError("h must be positive")
    if point_index_map is None:
        point_index_map = np.arange(n)
    else:
        point_index_map = np.asarray(point_index_map, dtype=int)
        if point_index_map.shape != (n,):
            raise ValueError("point_index_map length must equal the number of points")

    cells: dict[tuple, list] = {}
    for i, key in enumerate(map(tuple, np.floor(pts / h).astype(np.int64))):
        cells.setdefault(key, []).append(i)
    cells = {key: np.asarray(ilist) for key, ilist in cells.items()}

    offsets = [off for off in product((-1, 0, 1), repeat=d)]
    rows, cols, vals = [], [], []
    for key, idx_a in cells.items():
        for off in offsets:
            nkey = tuple(k + o for k, o in zip(key, off))
            if nkey < key:
                continue  # each unordered cell pair once
            if nkey == key:
                if idx_a.size < 2:
                    continue
                block = _pair_block(pts, idx_a, idx_a, h)
                if block is None:
                    continue
                r, c, w = block
                upper = r < c  # keep i < j only; the block contains both orders
                rows.append(r[upper])
                cols.append(c[upper])
                vals.append(w[upper])
            else:
                idx_b = cells.get(nkey)
                if idx_b is None:
                    continue
                block = _pair_block(pts, idx_a, idx_b, h)
                if block is None:
                    continue
                r, c, w = block
                rows.append(r)
                cols.append(c)
                vals.append(w)

    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        w = np.concatenate(vals)
    else:
        r = c = np.empty(0, dtype=int)
        w = np.empty(0)

    upper = sparse.coo_matrix((w, (r, c)), shape=(n, n))
    diag = sparse.diags(np.full(n, float(np.exp(-1.0))))
    kernel = (upper + upper.T + diag).tocsr()
    degrees = np.asarray(kernel.sum(axis=1)).ravel()
    return SimilarityGraph(
        kernel_matrix=kernel,
        degrees=degrees,
        h=float(h),
        points=pts,
        point_index_map=point_index_map,
    )


def markov_matrix(graph: SimilarityGraph) -> sparse.csr_matrix:
    """Row-stochastic transition matrix Q = D^{-1} K."""
    coo = graph.kernel_matrix.tocoo()
    data = coo.data / graph.degrees[coo.row]
    return sparse.csr_matrix((data, (coo.row, coo.col)), shape=coo.shape)


def symmetric_matrix(graph: SimilarityGraph) -> sparse.csr_matrix:
    """Symmetric normalization S = D^{-1/2} K D^{-1/2}, conjugate to Q.

    Entries are computed as K_ij * (s_i * s_j) so the result is symmetric
    to the bit.
    """
    scale = 1.0 / np.sqrt(graph.degrees)
    coo = graph.kernel_matrix.tocoo()
    data = coo.data * (scale[coo.row] * scale[coo.col])
    return sparse.csr_matrix((data, (coo.row, coo.col)), shape=coo.shape)
