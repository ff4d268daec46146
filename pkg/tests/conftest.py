"""Shared randomized-instance generators for the test suite.

Instances for the exact spectral invariants are built from well-separated,
well-connected components: intra-component edges stay below 0.7h (so edge
weights are bounded away from the zero tolerance) and inter-component
distances stay above 1.5h (so h is strictly below the empirical minimum
component distance).  That keeps both sides of the zero-eigenvalue /
component-count identity far from the 1e-8 cutoff.
"""

import numpy as np
import pytest


def separated_instance(rng, max_total=200):
    """Random instance with separated components: (points, h, component sizes).

    Components are uniform balls of radius 0.35h or, in dimension >= 2,
    chains with steps in [0.25h, 0.45h]; centers sit at least 2.2h apart
    along the first axis.
    """
    d = int(rng.integers(1, 4))
    h = float(rng.uniform(0.2, 2.0))
    k = int(rng.integers(1, 6))
    total = int(rng.integers(max(5, k), max_total + 1))
    sizes = np.maximum(1, rng.multinomial(total - k, np.ones(k) / k) + 1)
    centers_x = np.cumsum(rng.uniform(2.2 * h, 4.0 * h, size=k)) + rng.normal()

    parts = []
    for c in range(k):
        m = int(sizes[c])
        center = np.zeros(d)
        center[0] = centers_x[c]
        if d >= 2 and rng.random() < 0.4:
            steps = rng.uniform(0.25 * h, 0.45 * h, size=m)
            pts = np.tile(center, (m, 1))
            pts[:, 1] += np.cumsum(steps) - steps.sum() / 2
            pts[:, 0] += rng.uniform(-0.05 * h, 0.05 * h, size=m)
        else:
            direction = rng.normal(size=(m, d))
            direction /= np.linalg.norm(direction, axis=1, keepdims=True)
            radius = 0.35 * h * rng.random(m) ** (1.0 / d)
            pts = center + direction * radius[:, None]
        parts.append(pts)
    return np.vstack(parts), h, sizes


def uniform_cloud(rng, max_total=120):
    """Unstructured instance: (points, h) with h a random distance quantile."""
    d = int(rng.integers(1, 4))
    n = int(rng.integers(5, max_total + 1))
    pts = rng.uniform(-1.0, 1.0, size=(n, d))
    diffs = pts[:, None, :] - pts[None, :, :]
    dists = np.sqrt((diffs**2).sum(-1))[np.triu_indices(n, k=1)]
    h = float(np.quantile(dists, rng.uniform(0.1, 0.6)))
    return pts, max(h, 1e-3)


@pytest.fixture(scope="session")
def instance_rng():
    return np.random.default_rng(20260810)
