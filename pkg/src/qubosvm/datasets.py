"""Dataset ingestion, synthetic generators, normalization, and splits.

All operations are pure given their seed. A :class:`Dataset` is immutable
after construction (its arrays are marked read-only) and safe to share
across threads.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import DatasetFormatError, GenerationError

# Points closer than this to the generating hyperplane are resampled;
# labels on the boundary itself would be ill-defined.
HYPERPLANE_MARGIN = 1e-6

# Draw budget for generate_hyperplane, per requested point.
_DRAW_CAP_FACTOR = 1000

NORMALIZATION_METHODS = ("min_max", "z_score")


@dataclass(eq=False)
class Dataset:
    """A binary-labeled feature matrix.

    X is N x d real-valued, Y is length N with entries in {+1, -1}.
    """

    X: np.ndarray
    Y: np.ndarray
    feature_names: list[str] | None = None

    def __post_init__(self):
        X = np.array(self.X, dtype=np.float64)
        Y = np.array(self.Y, dtype=np.int64)
        if X.ndim != 2:
            raise ValueError(f"X must be 2-D, got shape {X.shape}")
        if Y.ndim != 1:
            raise ValueError(f"Y must be 1-D, got shape {Y.shape}")
        if X.shape[0] != Y.shape[0]:
            raise ValueError(f"X has {X.shape[0]} rows but Y has {Y.shape[0]} labels")
        if X.shape[0] < 1 or X.shape[1] < 1:
            raise ValueError("a dataset needs at least one point and one feature")
        if not np.all(np.isfinite(X)):
            raise ValueError("X contains non-finite entries")
        if not np.all(np.abs(Y) == 1):
            raise ValueError("labels must be exactly +1 or -1")
        if self.feature_names is not None and len(self.feature_names) != X.shape[1]:
            raise ValueError("feature_names length does not match feature count")
        X.setflags(write=False)
        Y.setflags(write=False)
        self.X = X
        self.Y = Y

    @property
    def n_points(self) -> int:
        return self.X.shape[0]

    @property
    def n_features(self) -> int:
        return self.X.shape[1]

    def subset(self, indices) -> "Dataset":
        """New dataset holding the given rows, order preserved."""
        idx = np.asarray(indices, dtype=np.int64)
        return Dataset(self.X[idx], self.Y[idx], self.feature_names)


@dataclass(frozen=True)
class SplitSpec:
    """How to carve a training set out of a dataset.

    n_train points go to the training side; with per_class_balance set the
    classes contribute exactly n_train/2 each (n_train must then be even).
    """

    n_train: int
    seed: int = 0
    per_class_balance: bool = True

    def __post_init__(self):
        if self.n_train < 1:
            raise ValueError("n_train must be at least 1")
        if self.per_class_balance and self.n_train % 2 != 0:
            raise ValueError("balanced splits need an even n_train")


@dataclass(frozen=True)
class NormalizationParams:
    """Affine per-column transform: (x - shift) / scale."""

    shift: np.ndarray
    scale: np.ndarray
    method: str


def generate_blobs(n: int, d: int, seed: int, center_distance: float) -> Dataset:
    """Two isotropic unit-variance Gaussian clusters, one per class.

    The cluster centers sit center_distance apart along a random direction;
    each class gets exactly n/2 points. Deterministic for a fixed seed.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError(f"n must be even and >= 2, got {n}")
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if center_distance <= 0:
        raise ValueError(f"center_distance must be positive, got {center_distance}")
    rng = np.random.default_rng(seed)
    direction = rng.standard_normal(d)
    direction /= np.linalg.norm(direction)
    center = 0.5 * center_distance * direction
    half = n // 2
    X_pos = center + rng.standard_normal((half, d))
    X_neg = -center + rng.standard_normal((half, d))
    X = np.vstack([X_pos, X_neg])
    Y = np.concatenate([np.ones(half, dtype=np.int64), -np.ones(half, dtype=np.int64)])
    return Dataset(X, Y)


def generate_hyperplane(n: int, d: int, w, b: float, seed: int) -> Dataset:
    """Uniform points in [-1, 1]^d labeled by the sign of w.x + b.

    Points within HYPERPLANE_MARGIN of the boundary are discarded and
    redrawn. Drawing continues until n points are collected with at least
    one point in each class; if n is already reached with a single class,
    new points of the missing class replace existing ones. A draw cap of
    1000*n guards against configurations that cannot produce both classes.
    """
    w = np.asarray(w, dtype=np.float64)
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if w.ndim != 1 or w.shape[0] != d:
        raise ValueError(f"w must be a length-{d} vector")
    if not np.any(w != 0):
        raise ValueError("w must not be the zero vector")
    rng = np.random.default_rng(seed)
    cap = _DRAW_CAP_FACTOR * n
    points: list[np.ndarray] = []
    labels: list[int] = []
    for _ in range(cap):
        x = rng.uniform(-1.0, 1.0, size=d)
        score = float(w @ x) + b
        if abs(score) < HYPERPLANE_MARGIN:
            continue
        y = 1 if score > 0 else -1
        if len(points) < n:
            points.append(x)
            labels.append(y)
        elif y not in labels:
            # Full but single-class: swap out the last majority point.
            points[-1] = x
            labels[-1] = y
        if len(points) == n and (1 in labels) and (-1 in labels):
            return Dataset(np.vstack(points), np.asarray(labels))
    raise GenerationError(
        f"could not place {n} points of both classes within {cap} draws "
        f"(w={w.tolist()}, b={b})"
    )


def load_csv(path, label_column, positive_class, negative_class) -> Dataset:
    """Read a two-class dataset from an RFC-4180-style CSV file.

    label_column is either a header name (the file must then have a header
    row) or a zero-based column index (header row detected and skipped if
    its non-label cells do not parse as numbers). Rows whose label matches
    positive_class map to +1, negative_class to -1; all other rows are
    dropped. Remaining columns are parsed as real features.
    """
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row]
    if not rows:
        raise DatasetFormatError(f"{path}: file contains no rows")

    width = len(rows[0])
    if isinstance(label_column, str):
        header = rows[0]
        if label_column not in header:
            raise DatasetFormatError(
                f"{path}: no column named {label_column!r} in header {header}"
            )
        label_idx = header.index(label_column)
        data_rows = rows[1:]
        names = [h for k, h in enumerate(header) if k != label_idx]
    else:
        label_idx = int(label_column)
        if not 0 <= label_idx < width:
            raise DatasetFormatError(
                f"{path}: label index {label_idx} out of range for {width} columns"
            )
        data_rows = rows
        names = None
        if rows and _looks_like_header(rows[0], label_idx):
            data_rows = rows[1:]
            names = [h for k, h in enumerate(rows[0]) if k != label_idx]

    pos_lit, neg_lit = str(positive_class), str(negative_class)
    features: list[list[float]] = []
    labels: list[int] = []
    for lineno, row in enumerate(data_rows, start=1):
        if len(row) != width:
            raise DatasetFormatError(
                f"{path}: row {lineno} has {len(row)} cells, expected {width}"
            )
        lit = row[label_idx].strip()
        if lit == pos_lit:
            y = 1
        elif lit == neg_lit:
            y = -1
        else:
            continue
        feats = []
        for k, cell in enumerate(row):
            if k == label_idx:
                continue
            try:
                feats.append(float(cell))
            except ValueError:
                raise DatasetFormatError(
                    f"{path}: row {lineno}, column {k}: cannot parse {cell!r} as a number"
                ) from None
        features.append(feats)
        labels.append(y)

    label_arr = np.asarray(labels, dtype=np.int64)
    for lit, val in ((pos_lit, 1), (neg_lit, -1)):
        if len(labels) == 0 or not np.any(label_arr == val):
            raise DatasetFormatError(f"{path}: zero rows with label {lit!r}")
    return Dataset(np.asarray(features, dtype=np.float64), label_arr, names)


def _looks_like_header(row, label_idx: int) -> bool:
    for k, cell in enumerate(row):
        if k == label_idx:
            continue
        try:
            float(cell)
        except ValueError:
            return True
    return False


def save_csv(data: Dataset, path) -> None:
    """Write features then a final integer column named "label"."""
    names = data.feature_names or [f"x{k}" for k in range(data.n_features)]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([*names, "label"])
        for x, y in zip(data.X, data.Y):
            writer.writerow([*(repr(float(v)) for v in x), int(y)])


def normalization_params(data: Dataset, method: str = "min_max") -> NormalizationParams:
    """Fit per-column normalization statistics on a dataset.

    min_max maps each column affinely onto [0, 1]; z_score to zero mean and
    unit (population) variance. Constant columns map to 0 either way.
    """
    if method not in NORMALIZATION_METHODS:
        raise ValueError(f"unknown normalization method {method!r}")
    if method == "min_max":
        lo = data.X.min(axis=0)
        span = data.X.max(axis=0) - lo
        scale = np.where(span == 0, 1.0, span)
        return NormalizationParams(lo, scale, method)
    mean = data.X.mean(axis=0)
    std = data.X.std(axis=0)
    scale = np.where(std == 0, 1.0, std)
    return NormalizationParams(mean, scale, method)


def apply_normalization(data: Dataset, params: NormalizationParams) -> Dataset:
    X = (data.X - params.shift) / params.scale
    return Dataset(X, data.Y, data.feature_names)


def normalize(data: Dataset, method: str = "min_max") -> Dataset:
    """Normalize each feature column; labels are untouched. Total function."""
    return apply_normalization(data, normalization_params(data, method))


def split_stratified(data: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    """Per-class random train/test split; the test side is the complement.

    Selection is uniform at random under the seed and deterministic. In
    balanced mode each class contributes n_train/2 points; otherwise the
    per-class targets differ by at most one (the +1 class gets the extra).
    """
    if spec.n_train >= data.n_points:
        raise ValueError(
            f"n_train={spec.n_train} must leave at least one of the "
            f"{data.n_points} points for testing"
        )
    pos = np.flatnonzero(data.Y == 1)
    neg = np.flatnonzero(data.Y == -1)
    if spec.per_class_balance:
        want_pos = want_neg = spec.n_train // 2
    else:
        want_pos = (spec.n_train + 1) // 2
        want_neg = spec.n_train // 2
    for name, idx, want in (("+1", pos, want_pos), ("-1", neg, want_neg)):
        if len(idx) < want:
            raise ValueError(
                f"class {name} has {len(idx)} members, need {want} for the split"
            )
    rng = np.random.default_rng(spec.seed)
    take_pos = rng.choice(pos, size=want_pos, replace=False)
    take_neg = rng.choice(neg, size=want_neg, replace=False)
    train_idx = np.sort(np.concatenate([take_pos, take_neg]))
    mask = np.zeros(data.n_points, dtype=bool)
    mask[train_idx] = True
    test_idx = np.flatnonzero(~mask)
    return data.subset(train_idx), data.subset(test_idx)
