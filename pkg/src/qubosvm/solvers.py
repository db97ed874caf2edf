"""Low-energy search over QUBO bit vectors.

Two samplers share the BinarySolution output type: an exhaustive
enumerator that is the ground-truth oracle for desk-scale problems, and a
seeded multi-read simulated annealer standing in for annealing hardware.
The annealer's Metropolis sweeps run in a compiled kernel; all randomness
is drawn up front from per-read streams, so results do not depend on how
the reads are scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import ProblemTooLargeError
from .qubo import QuboProblem, energy

EXHAUSTIVE_LIMIT = 26  # enumeration budget 2^26

# Desk-scale sweep budgets standing in for hardware annealing times.
SWEEP_TIERS = {"low": 20, "mid": 100, "high": 1000}

_SCHEDULES = ("geometric", "linear")

# Stream index for the beta-range probe; read streams use indices < 2^32.
_BETA_PROBE_STREAM = 2**32


@dataclass(frozen=True)
class SaParams:
    """Simulated-annealing configuration.

    Each of num_reads independent restarts runs sweeps_per_read full passes
    of single-bit Metropolis updates while the inverse temperature moves
    from beta_initial to beta_final. Leave both betas unset to derive a
    range from the problem's single-flip energy scale at solve time.
    """

    num_reads: int = 10
    sweeps_per_read: int = 1000
    beta_initial: float | None = None
    beta_final: float | None = None
    schedule: str = "geometric"
    seed: int = 0

    def __post_init__(self):
        if self.num_reads < 1:
            raise ValueError("num_reads must be at least 1")
        if self.sweeps_per_read < 1:
            raise ValueError("sweeps_per_read must be at least 1")
        if self.schedule not in _SCHEDULES:
            raise ValueError(f"schedule must be one of {_SCHEDULES}")
        if (self.beta_initial is None) != (self.beta_final is None):
            raise ValueError("set both beta_initial and beta_final, or neither")
        if self.beta_initial is not None:
            if not 0 < self.beta_initial <= self.beta_final:
                raise ValueError("need beta_final >= beta_initial > 0")


@dataclass(eq=False)
class BinarySolution:
    """A bit vector with its exact energy; read_index is None for exhaustive."""

    bits: np.ndarray
    energy: float
    read_index: int | None = None

    def __post_init__(self):
        bits = np.array(self.bits, dtype=np.int8)
        bits.setflags(write=False)
        self.bits = bits

    def to_json_dict(self) -> dict:
        return {
            "bits": [int(v) for v in self.bits],
            "energy": float(self.energy),
            "read_index": self.read_index,
        }


def _lex_patterns(n_bits: int) -> np.ndarray:
    """All 2^n bit rows, ordered so row index order equals lexicographic order."""
    count = 1 << n_bits
    idx = np.arange(count, dtype=np.uint32)
    cols = [(idx >> (n_bits - 1 - j)) & 1 for j in range(n_bits)]
    if not cols:
        return np.zeros((1, 0))
    return np.stack(cols, axis=1).astype(np.float64)


def solve_exhaustive(problem: QuboProblem) -> BinarySolution:
    """Global minimum by enumeration; ties go to the lexicographically
    lowest bit pattern. Only problems with at most 2^26 states are accepted.
    """
    m = problem.num_variables
    if m > EXHAUSTIVE_LIMIT:
        raise ProblemTooLargeError(
            f"{m} variables exceed the enumeration limit of {EXHAUSTIVE_LIMIT}"
        )
    hu = m // 2
    hv = m - hu
    U = _lex_patterns(hu)
    V = _lex_patterns(hv)
    A, b = problem.A, problem.b
    a_uu, a_vv, a_uv = A[:hu, :hu], A[hu:, hu:], A[:hu, hu:]
    e_u = ((U @ a_uu) * U).sum(axis=1) + U @ b[:hu]
    e_v = ((V @ a_vv) * V).sum(axis=1) + V @ b[hu:]
    cross_left = U @ (2.0 * a_uv)

    best_e = np.inf
    best_u = best_v = 0
    chunk = max(1, (1 << 22) // max(V.shape[0], 1))
    for start in range(0, U.shape[0], chunk):
        stop = min(start + chunk, U.shape[0])
        block = e_u[start:stop, None] + cross_left[start:stop] @ V.T + e_v[None, :]
        flat = int(np.argmin(block))
        u_off, v_idx = divmod(flat, V.shape[0])
        if block[u_off, v_idx] < best_e:  # strict: earlier blocks win ties
            best_e = float(block[u_off, v_idx])
            best_u, best_v = start + u_off, v_idx
    bits = np.concatenate([U[best_u], V[best_v]]).astype(np.int8)
    return BinarySolution(bits, energy(problem, bits), read_index=None)


def incremental_delta(problem: QuboProblem, bits, flip_index: int) -> float:
    """Energy change from flipping one bit, in O(M) without re-evaluation."""
    m = problem.num_variables
    if not 0 <= flip_index < m:
        raise ValueError(f"flip_index {flip_index} out of range for {m} variables")
    z = np.asarray(bits, dtype=np.float64)
    if z.shape != (m,):
        raise ValueError(f"bit vector must have length {m}")
    delta = 1.0 - 2.0 * z[flip_index]
    row = problem.A[flip_index]
    return float(delta * (problem.b[flip_index] + 2.0 * (row @ z)) + row[flip_index])


def default_beta_range(problem: QuboProblem, seed: int = 0) -> tuple[float, float]:
    """Inverse-temperature range from single-flip magnitudes at a random state.

    beta runs from 1/|dE|_max (hot: the largest move is accepted with
    probability ~1/e) to 10/|dE|_min (cold: the smallest uphill move is
    all but frozen out).
    """
    rng = np.random.default_rng([seed, _BETA_PROBE_STREAM])
    m = problem.num_variables
    z = rng.integers(0, 2, size=m).astype(np.float64)
    deltas = (1.0 - 2.0 * z) * (problem.b + 2.0 * (problem.A @ z)) + np.diagonal(
        problem.A
    )
    mags = np.abs(deltas)
    mags = mags[mags > 0]
    if mags.size == 0:
        return 1.0, 10.0
    return float(1.0 / mags.max()), float(10.0 / mags.min())


def _beta_schedule(params: SaParams, problem: QuboProblem) -> np.ndarray:
    if params.beta_initial is None:
        lo, hi = default_beta_range(problem, params.seed)
    else:
        lo, hi = params.beta_initial, params.beta_final
    if params.schedule == "geometric":
        return np.geomspace(lo, hi, params.sweeps_per_read)
    return np.linspace(lo, hi, params.sweeps_per_read)


@njit(cache=True)
def _anneal_reads(A, b, diag, Z, thresholds):
    """Metropolis sweeps for every read; returns per-read best energy/state.

    Z is (reads, M) of 0/1 floats (mutated in place); thresholds is
    (reads, sweeps, M) holding -log(u)/beta per update, so acceptance is a
    single comparison. The best state seen at any sweep boundary is kept.
    """
    reads, sweeps, m = thresholds.shape
    best_energy = np.empty(reads)
    best_state = Z.copy()
    for r in range(reads):
        z = Z[r]
        # local field g = b + 2 A z; flipping bit i costs (1 - 2 z_i) g_i + A_ii
        g = b + 2.0 * (A @ z)
        e_best = 0.5 * (np.dot(z, g) + np.dot(z, b))
        for s in range(sweeps):
            for i in range(m):
                delta = 1.0 - 2.0 * z[i]
                if delta * g[i] + diag[i] < thresholds[r, s, i]:
                    z[i] += delta
                    two_delta = 2.0 * delta
                    for j in range(m):
                        g[j] += two_delta * A[i, j]
            e = 0.0
            for j in range(m):
                e += z[j] * (g[j] + b[j])
            e *= 0.5
            if e < e_best:
                e_best = e
                for j in range(m):
                    best_state[r, j] = z[j]
        best_energy[r] = e_best
    return best_energy, best_state


def solve_sa(problem: QuboProblem, params: SaParams) -> BinarySolution:
    """Best sample across num_reads independent annealing restarts.

    Read r draws its initial state and acceptance thresholds from a stream
    keyed by (seed, r) only, so results are independent of evaluation order
    and of any parallelism. Equal-energy reads resolve to the lowest read
    index, and the winner's energy is re-evaluated exactly.
    """
    m = problem.num_variables
    reads, sweeps = params.num_reads, params.sweeps_per_read
    betas = _beta_schedule(params, problem)

    Z = np.empty((reads, m))
    thresholds = np.empty((reads, sweeps, m))
    for r in range(reads):
        rng = np.random.default_rng([params.seed, r])
        Z[r] = rng.integers(0, 2, size=m)
        thresholds[r] = rng.random((sweeps, m))
    # Metropolis accept (u < exp(-beta dE)) becomes dE < -log(u)/beta.
    np.log(thresholds, out=thresholds)
    thresholds /= -betas[None, :, None]

    A = np.ascontiguousarray(problem.A)
    diag = np.ascontiguousarray(np.diagonal(A))
    best_energy, best_state = _anneal_reads(A, problem.b, diag, Z, thresholds)

    winner = int(np.argmin(best_energy))  # first occurrence: lowest read wins ties
    bits = best_state[winner].astype(np.int8)
    return BinarySolution(bits, energy(problem, bits), read_index=winner)
