"""Binary encoding of the SVM dual as a QUBO.

The dual objective over nonnegative multipliers,

    L(lam) = 1/2 lam.(G o yy^T).lam - sum(lam),    G = X X^T,

becomes a quadratic form over bits once each multiplier is written as a
K-bit fixed-point number lam_i = sum_k p_k z_{ik} with sorted power-of-two
weights p_k. Stacking the bits point-major gives

    energy(z) = z^T A z + z^T b,
    A = (1/2 G o yy^T + mu yy^T) (x) P P^T,     b = -(1_N (x) P),

where (x) is the Kronecker product and mu an optional penalty restoring the
dropped balance constraint sum(lam_i y_i) = 0. The Kronecker form is what
the code builds; the N x NK bit-to-multiplier map is never materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .datasets import Dataset

_SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class PrecisionVector:
    """Sorted powers of two weighting the bits of each multiplier."""

    powers: tuple[float, ...]

    def __post_init__(self):
        if len(self.powers) < 1:
            raise ValueError("precision vector needs at least one entry")
        for p in self.powers:
            if p <= 0:
                raise ValueError(f"precision entries must be positive, got {p}")
            e = math.log2(p)
            if 2.0 ** round(e) != p:
                raise ValueError(f"{p} is not an exact power of two")
        if any(a >= b for a, b in zip(self.powers, self.powers[1:])):
            raise ValueError("precision entries must be strictly increasing")
        object.__setattr__(self, "powers", tuple(float(p) for p in self.powers))

    @classmethod
    def from_exponents(cls, min_exponent: int, k_bits: int) -> "PrecisionVector":
        """Powers 2^min_exponent .. 2^(min_exponent + k_bits - 1)."""
        return cls(tuple(2.0**j for j in range(min_exponent, min_exponent + k_bits)))

    @classmethod
    def default(cls) -> "PrecisionVector":
        return cls((0.25, 0.5, 1.0, 2.0))

    @property
    def k_bits(self) -> int:
        return len(self.powers)

    @property
    def max_value(self) -> float:
        """Largest representable multiplier, sum of all powers."""
        return float(sum(self.powers))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.powers, dtype=np.float64)


@dataclass(eq=False)
class QuboProblem:
    """Symmetric quadratic form over M = n_points * k_bits binary variables."""

    A: np.ndarray
    b: np.ndarray
    n_points: int
    k_bits: int

    def __post_init__(self):
        A = np.array(self.A, dtype=np.float64)
        b = np.array(self.b, dtype=np.float64)
        m = self.n_points * self.k_bits
        if A.shape != (m, m):
            raise ValueError(f"A must be {m}x{m}, got {A.shape}")
        if b.shape != (m,):
            raise ValueError(f"b must have length {m}, got {b.shape}")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise ValueError("QUBO coefficients must be finite")
        if np.max(np.abs(A - A.T), initial=0.0) > _SYMMETRY_TOL:
            raise ValueError("A must be symmetric")
        A.setflags(write=False)
        b.setflags(write=False)
        self.A = A
        self.b = b

    @property
    def num_variables(self) -> int:
        return self.n_points * self.k_bits

    def upper_triangular(self) -> np.ndarray:
        """Single-matrix form U with energy(z) = z^T U z.

        The linear vector is folded onto the diagonal and each symmetric
        off-diagonal pair onto the upper entry; handy for samplers that
        expect a triangular QUBO matrix.
        """
        U = np.triu(2.0 * self.A, k=1)
        np.fill_diagonal(U, np.diagonal(self.A) + self.b)
        return U

    def to_json_dict(self) -> dict:
        """Interchange form: energy = sum_i linear_i z_i + sum_{i<=j} q_ij z_i z_j.

        Diagonal entries carry A_ii, off-diagonal entries 2*A_ij; zero
        coefficients are omitted.
        """
        iu, ju = np.triu_indices(self.num_variables)
        vals = np.where(iu == ju, self.A[iu, ju], 2.0 * self.A[iu, ju])
        keep = vals != 0
        quadratic = [
            [int(i), int(j), float(v)]
            for i, j, v in zip(iu[keep], ju[keep], vals[keep])
        ]
        return {
            "n_points": self.n_points,
            "k_bits": self.k_bits,
            "linear": [float(v) for v in self.b],
            "quadratic": quadratic,
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "QuboProblem":
        n, k = int(doc["n_points"]), int(doc["k_bits"])
        m = n * k
        b = np.asarray(doc["linear"], dtype=np.float64)
        A = np.zeros((m, m))
        for i, j, v in doc["quadratic"]:
            if i == j:
                A[i, i] = v
            else:
                A[i, j] = A[j, i] = v / 2.0
        return cls(A, b, n, k)


def build_qubo(
    train: Dataset,
    precision: PrecisionVector,
    equality_penalty: float = 0.0,
) -> QuboProblem:
    """Encode the dual of a training set as a QUBO.

    With equality_penalty = 0 the minimum of the resulting energy over bit
    vectors is the binarized dual optimum. A positive penalty mu adds
    mu * (sum_i lam_i y_i)^2 to every energy, softly restoring the balance
    constraint the encoding otherwise drops.
    """
    if equality_penalty < 0:
        raise ValueError("equality_penalty must be nonnegative")
    y = train.Y.astype(np.float64)
    if not (np.any(y > 0) and np.any(y < 0)):
        raise ValueError("training data must contain both classes")
    gram = train.X @ train.X.T
    gram = 0.5 * (gram + gram.T)  # enforce exact symmetry
    yy = np.outer(y, y)
    coeff = 0.5 * gram * yy
    if equality_penalty > 0:
        coeff = coeff + equality_penalty * yy
    p = precision.as_array()
    A = np.kron(coeff, np.outer(p, p))
    b = -np.tile(p, train.n_points)
    return QuboProblem(A, b, train.n_points, precision.k_bits)


def _as_bits(bits, expected: int) -> np.ndarray:
    z = np.asarray(bits)
    if z.ndim != 1 or z.shape[0] != expected:
        raise ValueError(f"bit vector must have length {expected}, got shape {z.shape}")
    z = z.astype(np.float64)
    if not np.all((z == 0.0) | (z == 1.0)):
        raise ValueError("bit vector entries must be 0 or 1")
    return z


def energy(problem: QuboProblem, bits) -> float:
    """Evaluate z^T A z + z^T b at a bit vector."""
    z = _as_bits(bits, problem.num_variables)
    return float(z @ problem.A @ z + z @ problem.b)


def decode_multipliers(bits, precision: PrecisionVector, n_points: int) -> np.ndarray:
    """Map NK bits back to N nonnegative multipliers, point-major bit order."""
    z = _as_bits(bits, n_points * precision.k_bits)
    return z.reshape(n_points, precision.k_bits) @ precision.as_array()
