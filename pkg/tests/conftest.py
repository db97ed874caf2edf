"""Shared fixtures and independent oracles.

The oracle functions here re-derive expected values by plain enumeration
or direct summation, never through the library's own vectorized paths.
"""

import itertools
from pathlib import Path

import numpy as np
import pytest

from qubosvm import Dataset, PrecisionVector

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = REPO_ROOT / "data"


@pytest.fixture(scope="session")
def iris_csv() -> Path:
    return DATA_DIR / "iris.csv"


@pytest.fixture(scope="session")
def wbc_csv() -> Path:
    return DATA_DIR / "wbc.csv"


@pytest.fixture()
def two_point_data() -> Dataset:
    return Dataset(np.array([[1.0], [-1.0]]), np.array([1, -1]))


@pytest.fixture()
def half_precision() -> PrecisionVector:
    return PrecisionVector((0.5,))


def oracle_energy(A, b, bits) -> float:
    """z.A.z + z.b by explicit double loop."""
    total = 0.0
    m = len(bits)
    for i in range(m):
        if bits[i]:
            total += b[i]
            for j in range(m):
                if bits[j]:
                    total += A[i][j]
    return total


def oracle_minimum(A, b):
    """Global QUBO minimum by full enumeration, lexicographic tie-break."""
    m = len(b)
    best_bits, best_energy = None, np.inf
    for bits in itertools.product((0, 1), repeat=m):
        e = oracle_energy(A, b, bits)
        if e < best_energy:
            best_bits, best_energy = bits, e
    return np.array(best_bits), best_energy


def oracle_dual(X, Y, lam) -> float:
    """Minimization-form dual by explicit double sum."""
    n = len(lam)
    quad = 0.0
    for i in range(n):
        for j in range(n):
            quad += lam[i] * lam[j] * Y[i] * Y[j] * float(np.dot(X[i], X[j]))
    return 0.5 * quad - float(np.sum(lam))


def random_two_class_dataset(rng, n_max=8, d_max=5) -> Dataset:
    """Small random dataset guaranteed to contain both classes."""
    n = int(rng.integers(2, n_max + 1))
    d = int(rng.integers(1, d_max + 1))
    X = rng.normal(size=(n, d))
    Y = np.ones(n, dtype=np.int64)
    n_neg = int(rng.integers(1, n))
    Y[rng.choice(n, size=n_neg, replace=False)] = -1
    return Dataset(X, Y)


def random_precision(rng, k_max=4) -> PrecisionVector:
    k = int(rng.integers(1, k_max + 1))
    exponents = sorted(rng.choice(np.arange(-3, 4), size=k, replace=False))
    return PrecisionVector(tuple(2.0 ** int(e) for e in exponents))
