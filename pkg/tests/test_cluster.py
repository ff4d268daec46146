import itertools
import math

import numpy as np
import pytest

from levelset_spectral import (
    NOISE,
    DegenerateEmbeddingError,
    LevelSetExtraction,
    adjusted_rand_index,
    align_to_indicators,
    assemble_labels,
    build_graph,
    connected_components,
    eigendecompose,
    embed,
    kmeans,
)
from levelset_spectral.cluster import _lloyd, _plus_plus_init
from conftest import separated_instance


def brute_force_best_inertia(X, k):
    """Optimal k-means inertia by scanning every assignment of n points."""
    n = X.shape[0]
    best = math.inf
    for assign in itertools.product(range(k), repeat=n):
        assign = np.asarray(assign)
        if np.unique(assign).size != k:
            continue
        inertia = 0.0
        for c in range(k):
            block = X[assign == c]
            inertia += float(((block - block.mean(axis=0)) ** 2).sum())
        best = min(best, inertia)
    return best


def pair_counting_ari(a, b):
    """ARI from explicit agreement counts over all point pairs."""
    n = len(a)
    same_same = same_diff = diff_same = diff_diff = 0
    for i in range(n - 1):
        for j in range(i + 1, n):
            sa, sb = a[i] == a[j], b[i] == b[j]
            if sa and sb:
                same_same += 1
            elif sa:
                same_diff += 1
            elif sb:
                diff_same += 1
            else:
                diff_diff += 1
    total = same_same + same_diff + diff_same + diff_diff
    expected = (same_same + same_diff) * (same_same + diff_same) / total
    maximum = (2 * same_same + same_diff + diff_same) / 2.0
    if maximum == expected:
        return 1.0
    return (same_same - expected) / (maximum - expected)


def test_kmeans_k1_is_the_mean():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(40, 3))
    result = kmeans(X, 1, restarts=2, seed=1)
    assert np.allclose(result.centroids[0], X.mean(axis=0))
    assert result.inertia == pytest.approx(float(((X - X.mean(0)) ** 2).sum()), rel=1e-12)
    assert np.all(result.assignments == 0)


def test_kmeans_collapsed_rows_give_zero_inertia():
    # the post-embedding situation: rows sit at exactly k locations
    locations = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    X = locations[np.array([0, 1, 2, 0, 1, 2, 1, 1])]
    result = kmeans(X, 3, restarts=5, seed=2)
    assert result.inertia == 0.0
    ids = [result.assignments[i] for i in range(3)]
    assert len(set(ids)) == 3
    assert np.array_equal(result.assignments[3:6], ids)


def test_kmeans_two_clusters_on_a_line():
    X = np.array([[0.0], [0.1], [0.9], [1.0]])
    result = kmeans(X, 2, restarts=5, seed=3)
    assert result.inertia == pytest.approx(0.01, rel=1e-12)
    assert result.assignments[0] == result.assignments[1]
    assert result.assignments[2] == result.assignments[3]
    assert result.assignments[0] != result.assignments[2]
    assert sorted(result.centroids.ravel()) == pytest.approx([0.05, 0.95], rel=1e-12)


def test_kmeans_matches_exhaustive_optimum():
    rng = np.random.default_rng(4)
    for _ in range(10):
        n = int(rng.integers(4, 9))
        k = int(rng.integers(1, 4))
        X = rng.normal(size=(n, 2))
        result = kmeans(X, k, restarts=32, seed=int(rng.integers(1 << 31)))
        assert result.inertia <= brute_force_best_inertia(X, k) + 1e-12


def test_kmeans_centroids_are_member_means():
    rng = np.random.default_rng(5)
    X = rng.normal(size=(60, 2))
    result = kmeans(X, 4, restarts=3, seed=6)
    for c in range(4):
        members = X[result.assignments == c]
        assert members.size > 0
        assert np.allclose(result.centroids[c], members.mean(axis=0), atol=1e-12)


def test_lloyd_inertia_monotone_and_terminates():
    rng = np.random.default_rng(7)
    for _ in range(10):
        X = rng.normal(size=(50, 2))
        centroids = _plus_plus_init(X, 3, rng)
        _, _, _, iterations, history = _lloyd(X, centroids, max_iter=300)
        assert iterations <= 300
        assert all(b <= a + 1e-12 for a, b in zip(history, history[1:]))


def test_kmeans_deterministic_for_fixed_seed():
    rng = np.random.default_rng(8)
    X = rng.normal(size=(30, 2))
    a = kmeans(X, 3, restarts=4, seed=99)
    b = kmeans(X, 3, restarts=4, seed=99)
    assert np.array_equal(a.assignments, b.assignments)
    assert np.array_equal(a.centroids, b.centroids)


def test_kmeans_partition_invariant_under_row_permutation():
    # same partition (as a partition, not as label values) after shuffling rows
    rng = np.random.default_rng(9)
    X = np.vstack([rng.normal(size=(20, 2)), rng.normal(size=(20, 2)) + 8.0])
    perm = rng.permutation(40)
    a = kmeans(X, 2, restarts=5, seed=10).assignments
    b = kmeans(X[perm], 2, restarts=5, seed=10).assignments
    assert adjusted_rand_index(a[perm], b) == 1.0


def test_kmeans_validation():
    X = np.array([[0.0], [0.0], [1.0]])
    with pytest.raises(ValueError, match="distinct"):
        kmeans(X, 3)
    with pytest.raises(ValueError):
        kmeans(X, 0)
    with pytest.raises(ValueError):
        kmeans(X, 1, restarts=0)


def _extraction(n, retained):
    values = np.zeros(n)
    values[retained] = 1.0
    return LevelSetExtraction(level=0.5, retained=np.asarray(retained),
                              density_values=values)


def test_assemble_labels_bookkeeping():
    extraction = _extraction(4, [0, 2])
    km = kmeans(np.array([[0.0], [5.0]]), 2, restarts=2, seed=0)
    # force known assignment order for the check
    result = assemble_labels(extraction, km)
    assert result.labels[1] == NOISE and result.labels[3] == NOISE
    assert result.labels[0] == km.assignments[0]
    assert result.labels[2] == km.assignments[1]


def test_assemble_labels_full_retention_has_no_noise():
    extraction = _extraction(3, [0, 1, 2])
    km = kmeans(np.array([[0.0], [0.1], [5.0]]), 2, restarts=2, seed=0)
    result = assemble_labels(extraction, km)
    assert np.all(result.labels != NOISE)


def test_assemble_labels_length_mismatch():
    extraction = _extraction(4, [0, 2])
    km = kmeans(np.array([[0.0], [1.0], [2.0]]), 1, restarts=1, seed=0)
    with pytest.raises(ValueError, match="match"):
        assemble_labels(extraction, km)


def test_alignment_identity_fixed_point():
    labels = np.array([0, 1, 2, 0, 1, 2])
    rows = np.eye(3)[labels]
    report = align_to_indicators(rows, labels)
    assert np.allclose(report.xi, np.eye(3), atol=1e-12)
    assert report.residual <= 1e-12


def test_alignment_undoes_rotation():
    rng = np.random.default_rng(10)
    labels = rng.integers(0, 3, size=40)
    labels[:3] = [0, 1, 2]
    rotation, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    rows = np.eye(3)[labels] @ rotation.T
    report = align_to_indicators(rows, labels)
    assert report.residual <= 1e-12
    assert np.allclose(report.xi, rotation.T, atol=1e-10) or np.allclose(
        report.xi @ rotation.T, np.eye(3), atol=1e-10)


def test_alignment_on_spectral_embedding(instance_rng):
    for _ in range(8):
        pts, h, _ = separated_instance(instance_rng, max_total=100)
        comp = connected_components(pts, h)
        if comp.count < 2:
            continue
        g = build_graph(pts, h)
        rows = embed(eigendecompose(g, comp.count), comp.count)
        report = align_to_indicators(rows, comp.labels)
        assert report.residual <= 1e-6


def test_alignment_validation():
    rows = np.zeros((4, 2))
    with pytest.raises(DegenerateEmbeddingError):
        align_to_indicators(rows, [0, 1, 0, 1])
    with pytest.raises(ValueError):
        align_to_indicators(np.eye(2), [0, 2])


def test_ari_reference_values():
    assert adjusted_rand_index([0, 0, 1, 1], [0, 0, 1, 1]) == 1.0
    assert adjusted_rand_index([0, 0, 1, 1], [1, 1, 0, 0]) == 1.0
    assert adjusted_rand_index([0, 0, 0, 0], [1, 1, 1, 1]) == 1.0
    assert adjusted_rand_index([0, 0, 1, 1], [0, 1, 0, 1]) == pytest.approx(-0.5)


def test_ari_excludes_noise_pairwise():
    a = [0, 0, 1, 1, NOISE, 2]
    b = [5, 5, 7, 7, 3, NOISE]
    assert adjusted_rand_index(a, b) == 1.0


def test_ari_matches_pair_counting_oracle():
    rng = np.random.default_rng(11)
    for _ in range(15):
        n = int(rng.integers(5, 40))
        a = rng.integers(0, 4, size=n)
        b = rng.integers(0, 3, size=n)
        assert adjusted_rand_index(a, b) == pytest.approx(
            pair_counting_ari(list(a), list(b)), abs=1e-12)


def test_ari_validation():
    with pytest.raises(ValueError):
        adjusted_rand_index([0, 1], [0])
    with pytest.raises(ValueError, match="comparable"):
        adjusted_rand_index([NOISE, 0], [0, NOISE])
