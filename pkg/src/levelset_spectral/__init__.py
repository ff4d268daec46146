"""Spectral clustering on estimated density level sets.

Two-stage clustering: a Gaussian KDE filters the sample down to the points
whose estimated density clears a level t, then spectral clustering with a
compact-support similarity kernel partitions the retained points.  The
number of clusters is read off the zero eigenvalues of I - S, and the
discarded points stay unlabeled (NOISE).
"""

from .cluster import (
    NOISE,
    AlignmentReport,
    ClusteringResult,
    DegenerateEmbeddingError,
    KMeansResult,
    adjusted_rand_index,
    align_to_indicators,
    assemble_labels,
    kmeans,
)
from .datasets import MixtureSpec, PointSet, load_points, save_points, simulate_mixture
from .density import (
    DensityModel,
    EmptyLevelSetError,
    LevelSetExtraction,
    extract_level_set,
    kde_eval,
    kde_fit,
    lscv_bandwidth,
    lscv_score,
    select_level_by_retention,
)
from .graph import SimilarityGraph, build_graph, bump_kernel, markov_matrix, symmetric_matrix
from .pipeline import DEFAULT_BANDWIDTH_GRID, PipelineConfig, run_baseline, run_pipeline
from .reference import (
    ComponentLabeling,
    connected_components,
    dense_reference_spectrum,
    min_intercomponent_distance,
)
from .spectral import (
    EigensolverError,
    OutsideSupportError,
    SpectralEmbedding,
    ZeroCountReport,
    count_zero_eigenvalues,
    eigendecompose,
    embed,
    extend_eigenfunction,
)

__version__ = "0.1.0"

__all__ = [
    "NOISE",
    "AlignmentReport",
    "ClusteringResult",
    "ComponentLabeling",
    "DEFAULT_BANDWIDTH_GRID",
    "DegenerateEmbeddingError",
    "DensityModel",
    "EigensolverError",
    "EmptyLevelSetError",
    "KMeansResult",
    "LevelSetExtraction",
    "MixtureSpec",
    "OutsideSupportError",
    "PipelineConfig",
    "PointSet",
    "SimilarityGraph",
    "SpectralEmbedding",
    "ZeroCountReport",
    "adjusted_rand_index",
    "align_to_indicators",
    "assemble_labels",
    "build_graph",
    "bump_kernel",
    "connected_components",
    "count_zero_eigenvalues",
    "dense_reference_spectrum",
    "eigendecompose",
    "embed",
    "extend_eigenfunction",
    "extract_level_set",
    "kde_eval",
    "kde_fit",
    "kmeans",
    "load_points",
    "lscv_bandwidth",
    "lscv_score",
    "markov_matrix",
    "min_intercomponent_distance",
    "run_baseline",
    "run_pipeline",
    "save_points",
    "select_level_by_retention",
    "simulate_mixture",
    "symmetric_matrix",
]
