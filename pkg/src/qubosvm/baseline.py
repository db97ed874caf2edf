"""Classical dual SVM trainer: pairwise coordinate ascent on the dual.

This is the accuracy and timing comparator for the QUBO path. It maximizes
the dual objective under sum(lam_i y_i) = 0 and 0 <= lam_i <= C using
maximal-violating-pair selection, the standard sequential minimal
optimization scheme. Gram computation, the update loop, and weight
recovery run in one compiled kernel so that timing studies see the
O(N^2 d) work rather than interpreter overhead. A large C approximates the
hard margin while staying well-defined on inseparable data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .datasets import Dataset
from .svm import SUPPORT_THRESHOLD, SvmModel
from .errors import NoSupportVectorsError

_QUAD_FLOOR = 1e-12


@dataclass(frozen=True)
class BaselineParams:
    C: float = 1e6
    tolerance: float = 1e-6
    max_passes: int = 100_000
    seed: int = 0  # kept for interface symmetry; training is deterministic

    def __post_init__(self):
        if self.C <= 0:
            raise ValueError("C must be positive")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_passes < 1:
            raise ValueError("max_passes must be at least 1")


@dataclass
class SmoResult:
    """Raw optimizer output; objective_trace holds the minimization-form
    dual value after each working-pair update."""

    lambdas: np.ndarray
    bias: float
    converged: bool
    iterations: int
    objective_trace: np.ndarray


@njit(cache=True)
def _smo_core(gram, y, C, tol, max_passes):
    n = y.shape[0]
    alpha = np.zeros(n)
    grad = -np.ones(n)  # gradient of 1/2 a.Q.a - sum(a) at a = 0
    trace = np.empty(max_passes)
    obj = 0.0
    iterations = 0
    converged = False
    m_up = 0.0
    big_low = 0.0
    for _ in range(max_passes):
        # maximal-violating pair: i from the "up" set, j from the "low" set
        m_up = -np.inf
        big_low = np.inf
        i = -1
        j = -1
        for t in range(n):
            v = -y[t] * grad[t]
            if (y[t] > 0 and alpha[t] < C) or (y[t] < 0 and alpha[t] > 0):
                if v > m_up:
                    m_up = v
                    i = t
            if (y[t] < 0 and alpha[t] < C) or (y[t] > 0 and alpha[t] > 0):
                if v < big_low:
                    big_low = v
                    j = t
        if i < 0 or j < 0 or m_up - big_low <= tol:
            converged = True
            break
        quad = gram[i, i] + gram[j, j] - 2.0 * gram[i, j]
        if quad <= 0.0:
            quad = _QUAD_FLOOR
        step = (m_up - big_low) / quad
        bound_i = (C - alpha[i]) if y[i] > 0 else alpha[i]
        bound_j = alpha[j] if y[j] > 0 else (C - alpha[j])
        if bound_i < step:
            step = bound_i
        if bound_j < step:
            step = bound_j
        alpha[i] = min(max(alpha[i] + y[i] * step, 0.0), C)
        alpha[j] = min(max(alpha[j] - y[j] * step, 0.0), C)
        for t in range(n):
            grad[t] += step * y[t] * (gram[t, i] - gram[t, j])
        obj += 0.5 * quad * step * step - step * (m_up - big_low)
        trace[iterations] = obj
        iterations += 1
    return alpha, grad, converged, iterations, trace[:iterations], m_up, big_low


@njit(cache=True)
def _finalize_alpha(alpha, grad, y, C, m_up, big_low):
    """Exact balance re-projection plus the optimizer's own bias estimate.

    Rounding in the pair updates can leave sum(alpha*y) a few ulps (or,
    after very long runs, ~1e-9) off zero; re-projecting the freest
    variable restores the balance exactly. Mutates alpha; returns the bias.
    """
    n = alpha.shape[0]
    residual = 0.0
    best_slack = -1.0
    t = -1
    for k in range(n):
        residual += alpha[k] * y[k]
        if 0.0 < alpha[k] < C:
            slack = min(alpha[k], C - alpha[k])
            if slack > best_slack:
                best_slack = slack
                t = k
    if t < 0:
        return 0.5 * (m_up + big_low)
    if residual != 0.0:
        alpha[t] = min(max(alpha[t] - y[t] * residual, 0.0), C)
    bias = 0.0
    count = 0
    for k in range(n):
        if 0.0 < alpha[k] < C:
            bias += -y[k] * grad[k]
            count += 1
    return bias / count


@njit(cache=True)
def _train_kernel(X, y, C, tol, max_passes):
    gram = np.dot(X, X.T)
    alpha, grad, converged, iterations, trace, m_up, big_low = _smo_core(
        gram, y, C, tol, max_passes
    )
    bias = _finalize_alpha(alpha, grad, y, C, m_up, big_low)
    w = np.dot(X.T, alpha * y)
    return alpha, w, bias, converged, iterations, trace


def smo_solve(gram: np.ndarray, y: np.ndarray, params: BaselineParams) -> SmoResult:
    """Maximal-violating-pair dual ascent over a precomputed Gram matrix.

    Each pass picks the pair (i, j) with the largest KKT violation and
    solves the two-variable subproblem analytically, clipped to the box.
    The balance constraint holds exactly at termination. Terminates when
    the violation drops below tolerance or after max_passes updates.
    """
    gram = np.ascontiguousarray(gram, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    alpha, grad, converged, iterations, trace, m_up, big_low = _smo_core(
        gram, y, params.C, params.tolerance, params.max_passes
    )
    bias = _finalize_alpha(alpha, grad, y, params.C, m_up, big_low)
    return SmoResult(alpha, float(bias), bool(converged), int(iterations), trace.copy())


def train_classical(train: Dataset, params: BaselineParams | None = None) -> SvmModel:
    """Train the comparator classifier on a two-class dataset.

    Returns the model implied by the optimized multipliers, with the bias
    taken from the optimizer's own working value. A run that exhausts
    max_passes returns its best iterate with converged=False.
    """
    if params is None:
        params = BaselineParams()
    y = train.Y.astype(np.float64)
    if not (np.any(y > 0) and np.any(y < 0)):
        raise ValueError("training data must contain both classes")
    alpha, w, bias, converged, _, _ = _train_kernel(
        train.X, y, params.C, params.tolerance, params.max_passes
    )
    support = np.flatnonzero(alpha > SUPPORT_THRESHOLD)
    if support.size == 0:
        raise NoSupportVectorsError("optimizer returned no support vectors")
    model = SvmModel(w, float(bias), alpha, support)
    model.converged = bool(converged)
    return model
