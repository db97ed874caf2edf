"""Linear classifier recovery from dual multipliers, prediction, scoring."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .datasets import Dataset
from .errors import NoSupportVectorsError

# Multipliers above this count as support vectors. QUBO decoding yields
# exact grid values, but the classical solver leaves near-zero floats; one
# threshold serves both.
SUPPORT_THRESHOLD = 1e-8


@dataclass(eq=False)
class SvmModel:
    """Trained linear classifier: sign(w.x + bias)."""

    w: np.ndarray
    bias: float
    lambdas: np.ndarray
    support_indices: np.ndarray
    converged: bool = True

    def __post_init__(self):
        w = np.array(self.w, dtype=np.float64)
        lam = np.array(self.lambdas, dtype=np.float64)
        sup = np.array(self.support_indices, dtype=np.int64)
        for arr in (w, lam, sup):
            arr.setflags(write=False)
        self.w = w
        self.lambdas = lam
        self.support_indices = sup
        self.bias = float(self.bias)

    @property
    def n_features(self) -> int:
        return self.w.shape[0]

    def to_json_dict(self) -> dict:
        return {
            "w": [float(v) for v in self.w],
            "bias": self.bias,
            "lambdas": [float(v) for v in self.lambdas],
            "support_indices": [int(i) for i in self.support_indices],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "SvmModel":
        return cls(
            np.asarray(doc["w"], dtype=np.float64),
            float(doc["bias"]),
            np.asarray(doc["lambdas"], dtype=np.float64),
            np.asarray(doc["support_indices"], dtype=np.int64),
        )


def _check_lambdas(train: Dataset, lambdas) -> np.ndarray:
    lam = np.asarray(lambdas, dtype=np.float64)
    if lam.shape != (train.n_points,):
        raise ValueError(
            f"need one multiplier per training point ({train.n_points}), "
            f"got shape {lam.shape}"
        )
    if np.any(lam < 0):
        raise ValueError("multipliers must be nonnegative")
    return lam


def dual_objective(train: Dataset, lambdas) -> float:
    """Minimization-form dual value 1/2 lam.(G o yy^T).lam - sum(lam)."""
    lam = _check_lambdas(train, lambdas)
    u = lam * train.Y
    return float(0.5 * (u @ (train.X @ (train.X.T @ u))) - lam.sum())


def recover_model(
    train: Dataset,
    lambdas,
    bias: float | None = None,
    support_threshold: float = SUPPORT_THRESHOLD,
) -> SvmModel:
    """Build the classifier a multiplier vector implies.

    w = sum_i lam_i y_i x_i; unless given explicitly, the bias is the mean
    of y_i - w.x_i over the support vectors (the KKT stationarity residual
    averaged for robustness, since sampled multipliers need not balance).
    """
    lam = _check_lambdas(train, lambdas)
    support = np.flatnonzero(lam > support_threshold)
    if support.size == 0:
        raise NoSupportVectorsError(
            "all multipliers are at or below the support threshold"
        )
    w = train.X.T @ (lam * train.Y)
    if bias is None:
        bias = float(np.mean(train.Y[support] - train.X[support] @ w))
    return SvmModel(w, bias, lam, support)


def predict(model: SvmModel, x):
    """Label +1 or -1 for one point, or a label array for a stack of rows.

    A point exactly on the hyperplane gets +1.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        if x.shape[0] != model.n_features:
            raise ValueError(
                f"point has {x.shape[0]} features, model expects {model.n_features}"
            )
        return 1 if float(model.w @ x) + model.bias >= 0 else -1
    if x.ndim != 2 or x.shape[1] != model.n_features:
        raise ValueError(
            f"points must be rows of {model.n_features} features, got shape {x.shape}"
        )
    return np.where(x @ model.w + model.bias >= 0, 1, -1).astype(np.int64)


def accuracy(model: SvmModel, data: Dataset) -> float:
    """Fraction of points whose predicted label matches."""
    if data.n_points == 0:
        raise ValueError("cannot score an empty dataset")
    return float(np.mean(predict(model, data.X) == data.Y))
