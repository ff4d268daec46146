"""Synthetic benchmark mixture and CSV point-set I/O.

The built-in generator draws i.i.d. planar points from a four-component
mixture: a tight Gaussian blob at the origin, two concentric noisy rings,
and a square of uniform background noise.  Component ids are kept as
ground-truth labels so clustering quality can be scored afterwards.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MixtureSpec",
    "PointSet",
    "simulate_mixture",
    "load_points",
    "save_points",
]


@dataclass(frozen=True)
class MixtureSpec:
    """Parameters of the four-component benchmark mixture.

    Components, in label order:
      0: N(0, gaussian_sigma^2 I) blob,
      1: ring of radius ring1_radius_mean (+/- ring1_radius_sd),
      2: ring of radius ring2_radius_mean (+/- ring2_radius_sd),
      3: uniform noise on the square [-w, w]^2.
    """

    proportions: tuple[float, float, float, float] = (0.10, 0.32, 0.53, 0.05)
    gaussian_sigma: float = 0.2
    ring1_radius_mean: float = 1.0
    ring1_radius_sd: float = 0.1
    ring2_radius_mean: float = 2.0
    ring2_radius_sd: float = 0.2
    noise_box_halfwidth: float = 3.0
    seed: int = 0

    def __post_init__(self):
        p = np.asarray(self.proportions, dtype=float)
        if p.shape != (4,) or np.any(p < 0):
            raise ValueError("proportions must be 4 nonnegative weights")
        if abs(float(p.sum()) - 1.0) > 1e-12:
            raise ValueError(f"proportions must sum to 1, got {float(p.sum())}")
        for name in ("gaussian_sigma", "ring1_radius_sd", "ring2_radius_sd"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass
class PointSet:
    """n points in R^d with optional integer ground-truth labels."""

    points: np.ndarray
    labels: np.ndarray | None = None

    def __post_init__(self):
        self.points = np.atleast_2d(np.asarray(self.points, dtype=float))
        if self.points.shape[0] < 1:
            raise ValueError("point set must contain at least one point")
        if not np.all(np.isfinite(self.points)):
            raise ValueError("coordinates must all be finite")
        if self.labels is not None:
            self.labels = np.asarray(self.labels, dtype=int)
            if self.labels.shape != (self.points.shape[0],):
                raise ValueError("labels length must equal the number of points")

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


def simulate_mixture(spec: MixtureSpec, n: int) -> PointSet:
    """Draw n i.i.d. labeled points from the mixture.

    Each point picks its component independently with the spec's
    proportions (no fixed per-component counts).  Output is bit-identical
    for identical (spec, n).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(spec.seed)
    labels = rng.choice(4, size=n, p=np.asarray(spec.proportions, dtype=float))
    points = np.empty((n, 2))

    blob = np.flatnonzero(labels == 0)
    points[blob] = rng.normal(0.0, spec.gaussian_sigma, size=(blob.size, 2))

    rings = (
        (1, spec.ring1_radius_mean, spec.ring1_radius_sd),
        (2, spec.ring2_radius_mean, spec.ring2_radius_sd),
    )
    for label, radius_mean, radius_sd in rings:
        idx = np.flatnonzero(labels == label)
        theta = rng.uniform(0.0, 2.0 * np.pi, size=idx.size)
        radius = rng.normal(radius_mean, radius_sd, size=idx.size)
        points[idx] = radius[:, None] * np.column_stack([np.cos(theta), np.sin(theta)])

    noise = np.flatnonzero(labels == 3)
    w = spec.noise_box_halfwidth
    points[noise] = rng.uniform(-w, w, size=(noise.size, 2))

    return PointSet(points, labels)


def save_points(point_set: PointSet, path, header: bool = True) -> None:
    """Write a point set as CSV (columns x0..x{d-1}[, label], 17 significant digits)."""
    d = point_set.dim
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        if header:
            names = [f"x{i}" for i in range(d)]
            if point_set.labels is not None:
                names.append("label")
            writer.writerow(names)
        for i in range(point_set.n):
            row = [format(v, ".17g") for v in point_set.points[i]]
            if point_set.labels is not None:
                row.append(str(int(point_set.labels[i])))
            writer.writerow(row)


def _parses_as_float(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def load_points(path) -> PointSet:
    """Read a point set from CSV.

    An optional single header row names d coordinate columns x0..x{d-1}
    and, when present, an integer "label" column.  Headerless files are
    treated as pure coordinates.
    """
    with open(path, newline="") as fh:
        rows = [(lineno, row) for lineno, row in enumerate(csv.reader(fh), start=1)
                if any(field.strip() for field in row)]
    if not rows:
        raise ValueError(f"{path}: no data rows")

    label_col = None
    first = [field.strip() for field in rows[0][1]]
    if not all(_parses_as_float(field) for field in first):
        if "label" in first:
            label_col = first.index("label")
        rows = rows[1:]
        if not rows:
            raise ValueError(f"{path}: no data rows")

    width = len(rows[0][1])
    coords = []
    labels = [] if label_col is not None else None
    for lineno, row in rows:
        if len(row) != width:
            raise ValueError(
                f"{path}: line {lineno}: expected {width} fields, got {len(row)}")
        try:
            values = [float(field) for i, field in enumerate(row) if i != label_col]
            if label_col is not None:
                labels.append(int(float(row[label_col])))
        except ValueError:
            raise ValueError(f"{path}: line {lineno}: unparseable field") from None
        coords.append(values)

    return PointSet(np.asarray(coords), None if labels is None else np.asarray(labels))
