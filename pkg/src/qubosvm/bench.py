"""Experiment harness: accuracy tables, sweep sensitivity, scaling studies.

Reports carry one row per repetition (or per timing sample for scaling
runs) plus aggregates recomputable from the rows. Wall-clock fields all
end in "_seconds"; the canonical serialization drops them, since timings
are the one part of a report that cannot be bitwise reproducible.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import partial

import numpy as np

from .baseline import BaselineParams, train_classical
from .datasets import (
    Dataset,
    SplitSpec,
    apply_normalization,
    generate_blobs,
    generate_hyperplane,
    load_csv,
    normalization_params,
    split_stratified,
)
from .errors import NoSupportVectorsError
from .qubo import PrecisionVector, build_qubo, decode_multipliers
from .solvers import EXHAUSTIVE_LIMIT, SaParams, solve_exhaustive, solve_sa
from .svm import accuracy, recover_model

WORKERS_ENV_VAR = "QUBOSVM_WORKERS"

# Desk-scale guard rails; beyond these an explicit allow_large is required.
MAX_FEATURES_DEFAULT = 2**14
MAX_POINTS_DEFAULT = 54

_TIMING_SAMPLES = 3


def _worker_count() -> int:
    value = os.environ.get(WORKERS_ENV_VAR)
    if value:
        return max(1, int(value))
    return os.cpu_count() or 1


def _derive_seed(*parts: int) -> int:
    return int(np.random.SeedSequence(list(parts)).generate_state(1)[0])


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything one experiment needs, JSON-round-trippable for the CLI.

    dataset_source is a dict with a "kind" key:
      {"kind": "blobs", "n": ..., "d": ..., "center_distance": ...}
      {"kind": "hyperplane", "n": ..., "d": ..., "w": [...], "b": ...}
      {"kind": "csv", "path": ..., "label_column": ...,
       "positive_class": ..., "negative_class": ...}
    """

    dataset_source: dict
    n_train: int
    repetitions: int = 10
    precision: PrecisionVector = field(default_factory=PrecisionVector.default)
    sa_params: SaParams = field(default_factory=SaParams)
    baseline_params: BaselineParams = field(default_factory=BaselineParams)
    normalization: str = "min_max"
    equality_penalty: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")
        if "kind" not in self.dataset_source:
            raise ValueError('dataset_source needs a "kind" key')

    def to_dict(self) -> dict:
        return {
            "dataset": dict(self.dataset_source),
            "n_train": self.n_train,
            "repetitions": self.repetitions,
            "precision": {"powers": list(self.precision.powers)},
            "sa": {
                "num_reads": self.sa_params.num_reads,
                "sweeps_per_read": self.sa_params.sweeps_per_read,
                "beta_initial": self.sa_params.beta_initial,
                "beta_final": self.sa_params.beta_final,
                "schedule": self.sa_params.schedule,
            },
            "baseline": {
                "C": self.baseline_params.C,
                "tolerance": self.baseline_params.tolerance,
                "max_passes": self.baseline_params.max_passes,
            },
            "normalization": self.normalization,
            "equality_penalty": self.equality_penalty,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentSpec":
        prec_doc = doc.get("precision", {})
        if "powers" in prec_doc:
            precision = PrecisionVector(tuple(prec_doc["powers"]))
        elif prec_doc:
            precision = PrecisionVector.from_exponents(
                int(prec_doc.get("min_exponent", -2)), int(prec_doc.get("k_bits", 4))
            )
        else:
            precision = PrecisionVector.default()
        sa_doc = doc.get("sa", {})
        sa = SaParams(
            num_reads=int(sa_doc.get("num_reads", 10)),
            sweeps_per_read=int(sa_doc.get("sweeps_per_read", 1000)),
            beta_initial=sa_doc.get("beta_initial"),
            beta_final=sa_doc.get("beta_final"),
            schedule=sa_doc.get("schedule", "geometric"),
        )
        base_doc = doc.get("baseline", {})
        baseline = BaselineParams(
            C=float(base_doc.get("C", 1e6)),
            tolerance=float(base_doc.get("tolerance", 1e-6)),
            max_passes=int(base_doc.get("max_passes", 100_000)),
        )
        return cls(
            dataset_source=dict(doc["dataset"]),
            n_train=int(doc["n_train"]),
            repetitions=int(doc.get("repetitions", 10)),
            precision=precision,
            sa_params=sa,
            baseline_params=baseline,
            normalization=doc.get("normalization", "min_max"),
            equality_penalty=float(doc.get("equality_penalty", 0.0)),
            seed=int(doc.get("seed", 0)),
        )


def resolve_dataset(source: dict, seed: int) -> Dataset:
    """Materialize a dataset_source dict; seed only matters for generators."""
    kind = source["kind"]
    if kind == "blobs":
        return generate_blobs(
            n=int(source["n"]),
            d=int(source["d"]),
            seed=seed,
            center_distance=float(source.get("center_distance", 10.0)),
        )
    if kind == "hyperplane":
        return generate_hyperplane(
            n=int(source["n"]),
            d=int(source["d"]),
            w=np.asarray(source["w"], dtype=np.float64),
            b=float(source.get("b", 0.0)),
            seed=seed,
        )
    if kind == "csv":
        return load_csv(
            source["path"],
            source["label_column"],
            source["positive_class"],
            source["negative_class"],
        )
    raise ValueError(f"unknown dataset kind {kind!r}")


@dataclass(eq=False)
class Report:
    """Rows plus aggregates; the aggregates are always derivable from rows."""

    kind: str
    meta: dict
    rows: list[dict]
    aggregates: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.aggregates:
            self.aggregates = aggregate_rows(self.kind, self.rows)

    def verify_consistency(self) -> None:
        recomputed = aggregate_rows(self.kind, self.rows)
        if recomputed != self.aggregates:
            raise AssertionError("report aggregates do not match its rows")

    def to_json_str(self) -> str:
        self.verify_consistency()
        doc = {
            "kind": self.kind,
            "meta": self.meta,
            "rows": self.rows,
            "aggregates": self.aggregates,
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    def canonical_json_str(self) -> str:
        """Deterministic content only: every *_seconds field stripped."""
        self.verify_consistency()
        doc = {
            "kind": self.kind,
            "meta": _strip_timings(self.meta),
            "rows": _strip_timings(self.rows),
            "aggregates": _strip_timings(self.aggregates),
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    def write_json(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json_str())
            fh.write("\n")

    def to_csv_str(self) -> str:
        cols: list[str] = []
        for row in self.rows:
            for key in row:
                if key not in cols:
                    cols.append(key)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=cols, restval="")
        writer.writeheader()
        for row in self.rows:
            writer.writerow(row)
        return buf.getvalue()

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv_str())


def _strip_timings(obj):
    if isinstance(obj, dict):
        return {
            k: _strip_timings(v)
            for k, v in obj.items()
            if not k.endswith("_seconds")
        }
    if isinstance(obj, list):
        return [_strip_timings(v) for v in obj]
    return obj


def _mean_std(values: list[float]) -> dict:
    """Population-convention statistics (std with ddof=0)."""
    arr = np.asarray(values, dtype=np.float64)
    return {
        "mean": float(arr.mean()),
        "std": float(arr.std()),
        "count": int(arr.size),
    }


_ACCURACY_METRICS = (
    "classical_train_accuracy",
    "classical_test_accuracy",
    "sa_train_accuracy",
    "sa_test_accuracy",
    "exhaustive_train_accuracy",
    "exhaustive_test_accuracy",
)


def _aggregate_accuracy_rows(rows: list[dict]) -> dict:
    agg: dict = {}
    for metric in _ACCURACY_METRICS:
        values = [r[metric] for r in rows if r.get(metric) is not None]
        if values:
            agg[metric] = _mean_std(values)
    agg["sa_failures"] = sum(1 for r in rows if r.get("sa_failed"))
    agg["exhaustive_failures"] = sum(1 for r in rows if r.get("exhaustive_failed"))
    agg["repetitions"] = len(rows)
    return agg


def aggregate_rows(kind: str, rows: list[dict]) -> dict:
    if kind == "accuracy":
        return _aggregate_accuracy_rows(rows)
    if kind == "sweep_sensitivity":
        budgets = sorted({r["sweeps_per_read"] for r in rows})
        return {
            "per_budget": {
                str(budget): _aggregate_accuracy_rows(
                    [r for r in rows if r["sweeps_per_read"] == budget]
                )
                for budget in budgets
            }
        }
    if kind in ("feature_scaling", "point_scaling"):
        axis = "d" if kind == "feature_scaling" else "n"
        cells = sorted({r[axis] for r in rows})
        out = {}
        for cell in cells:
            cell_rows = [r for r in rows if r[axis] == cell and not r.get("failed")]
            entry: dict = {"failed": not cell_rows}
            for phase in (
                "classical_train_seconds",
                "qubo_build_seconds",
                "sa_sample_seconds",
            ):
                values = [r[phase] for r in cell_rows if r.get(phase) is not None]
                if values:
                    entry[f"median_{phase}"] = float(np.median(values))
            out[str(cell)] = entry
        return {"per_cell": out}
    raise ValueError(f"unknown report kind {kind!r}")


def _accuracy_repetition(spec: ExperimentSpec, rep: int, data: Dataset | None) -> dict:
    if data is None:
        data = resolve_dataset(spec.dataset_source, seed=_derive_seed(spec.seed, rep, 0))
    train, test = split_stratified(
        data, SplitSpec(spec.n_train, seed=_derive_seed(spec.seed, rep, 1))
    )
    norm = normalization_params(train, spec.normalization)
    train_n = apply_normalization(train, norm)
    test_n = apply_normalization(test, norm)

    row: dict = {
        "repetition": rep,
        "n_train": train_n.n_points,
        "n_test": test_n.n_points,
        "m_bits": train_n.n_points * spec.precision.k_bits,
    }

    t0 = time.perf_counter()
    classical = train_classical(train_n, spec.baseline_params)
    row["classical_train_seconds"] = time.perf_counter() - t0
    row["classical_train_accuracy"] = accuracy(classical, train_n)
    row["classical_test_accuracy"] = accuracy(classical, test_n)
    row["classical_converged"] = classical.converged

    t0 = time.perf_counter()
    problem = build_qubo(train_n, spec.precision, spec.equality_penalty)
    row["qubo_build_seconds"] = time.perf_counter() - t0

    sa_params = replace(spec.sa_params, seed=_derive_seed(spec.seed, rep, 2))
    t0 = time.perf_counter()
    sa_solution = solve_sa(problem, sa_params)
    row["sa_sample_seconds"] = time.perf_counter() - t0
    row["sa_energy"] = sa_solution.energy
    row["sa_failed"] = False
    try:
        lam = decode_multipliers(sa_solution.bits, spec.precision, train_n.n_points)
        sa_model = recover_model(train_n, lam)
        row["sa_train_accuracy"] = accuracy(sa_model, train_n)
        row["sa_test_accuracy"] = accuracy(sa_model, test_n)
    except NoSupportVectorsError:
        row["sa_failed"] = True
        row["sa_train_accuracy"] = None
        row["sa_test_accuracy"] = None

    if problem.num_variables <= EXHAUSTIVE_LIMIT:
        t0 = time.perf_counter()
        exact = solve_exhaustive(problem)
        row["exhaustive_sample_seconds"] = time.perf_counter() - t0
        row["exhaustive_energy"] = exact.energy
        row["exhaustive_failed"] = False
        try:
            lam = decode_multipliers(exact.bits, spec.precision, train_n.n_points)
            exact_model = recover_model(train_n, lam)
            row["exhaustive_train_accuracy"] = accuracy(exact_model, train_n)
            row["exhaustive_test_accuracy"] = accuracy(exact_model, test_n)
        except NoSupportVectorsError:
            row["exhaustive_failed"] = True
            row["exhaustive_train_accuracy"] = None
            row["exhaustive_test_accuracy"] = None
    return row


def _repetition_task(spec: ExperimentSpec, data: Dataset | None, rep: int) -> dict:
    return _accuracy_repetition(spec, rep, data)


def run_accuracy_experiment(spec: ExperimentSpec) -> Report:
    """Split, normalize, and train every method once per repetition.

    CSV sources are loaded once and resplit per repetition; generated
    sources are redrawn per repetition. Every per-repetition seed derives
    from (spec.seed, repetition), so results are identical whether
    repetitions run sequentially or on a worker pool (worker processes,
    since the samplers are interpreter-bound; QUBOSVM_WORKERS=1 forces a
    sequential run).
    """
    fixed_data = None
    if spec.dataset_source["kind"] == "csv":
        fixed_data = resolve_dataset(spec.dataset_source, seed=0)
    reps = range(spec.repetitions)
    workers = min(_worker_count(), spec.repetitions)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(partial(_repetition_task, spec, fixed_data), reps))
    else:
        rows = [_accuracy_repetition(spec, r, fixed_data) for r in reps]
    return Report(kind="accuracy", meta={"spec": spec.to_dict()}, rows=rows)


def run_sweep_sensitivity(spec: ExperimentSpec, sweep_grid: list[int]) -> Report:
    """Accuracy experiment repeated at each sweep budget, with shared splits."""
    if not sweep_grid:
        raise ValueError("sweep_grid must not be empty")
    rows: list[dict] = []
    for budget in sweep_grid:
        budget_spec = replace(
            spec, sa_params=replace(spec.sa_params, sweeps_per_read=int(budget))
        )
        for row in run_accuracy_experiment(budget_spec).rows:
            row["sweeps_per_read"] = int(budget)
            rows.append(row)
    return Report(
        kind="sweep_sensitivity",
        meta={"spec": spec.to_dict(), "sweep_grid": [int(v) for v in sweep_grid]},
        rows=rows,
    )


def _timed(fn) -> tuple[float, object]:
    t0 = time.perf_counter()
    out = fn()
    return time.perf_counter() - t0, out


def _scaling_cell(spec: ExperimentSpec, data: Dataset, label: dict) -> list[dict]:
    """Time each phase _TIMING_SAMPLES times on one prepared dataset.

    Samples of one phase run back to back so each is measured warm; the
    interleaved order would let the sampler's working set evict the
    training phase's caches and dominate small cells with reload noise.
    """
    norm = normalization_params(data, spec.normalization)
    data_n = apply_normalization(data, norm)
    rows: list[dict] = [
        {**label, "sample": k, "failed": False} for k in range(_TIMING_SAMPLES)
    ]
    try:
        # One discarded run per phase brings caches and the allocator to
        # steady state, so samples measure the operation rather than the
        # debris the previous cell left behind.
        train_classical(data_n, spec.baseline_params)
        for row in rows:
            row["classical_train_seconds"], _ = _timed(
                lambda: train_classical(data_n, spec.baseline_params)
            )
        problem = build_qubo(data_n, spec.precision, spec.equality_penalty)
        for row in rows:
            row["qubo_build_seconds"], problem = _timed(
                lambda: build_qubo(data_n, spec.precision, spec.equality_penalty)
            )
        solve_sa(problem, replace(spec.sa_params, seed=_derive_seed(spec.seed, 0)))
        for row in rows:
            sa_params = replace(spec.sa_params, seed=_derive_seed(spec.seed, row["sample"]))
            row["sa_sample_seconds"], _ = _timed(lambda: solve_sa(problem, sa_params))
    except MemoryError as exc:
        for row in rows:
            if any(
                key not in row
                for key in (
                    "classical_train_seconds",
                    "qubo_build_seconds",
                    "sa_sample_seconds",
                )
            ):
                row["failed"] = True
                row["error"] = f"MemoryError: {exc}"
    return rows


def _warm_kernels(spec: ExperimentSpec) -> None:
    """Run every timed phase once on a toy instance so compiled kernels are
    ready before any measurement."""
    data = generate_blobs(n=4, d=2, seed=0, center_distance=10.0)
    data_n = apply_normalization(data, normalization_params(data, spec.normalization))
    train_classical(data_n, spec.baseline_params)
    problem = build_qubo(data_n, spec.precision, spec.equality_penalty)
    solve_sa(problem, replace(spec.sa_params, num_reads=1, sweeps_per_read=2))


def _check_grid(grid, what: str) -> list[int]:
    values = [int(v) for v in grid]
    if not values:
        raise ValueError(f"{what} grid must not be empty")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError(f"{what} grid must be strictly ascending")
    return values


def run_feature_scaling(
    spec: ExperimentSpec, feature_grid: list[int], allow_large: bool = False
) -> Report:
    """Timings vs feature count at a fixed number of training points.

    All spec.n_train points are used for training (scaling runs measure
    time, not accuracy). Cells run sequentially to avoid interference; a
    per-cell memory failure is recorded and the run continues.
    """
    grid = _check_grid(feature_grid, "feature")
    if spec.dataset_source["kind"] != "blobs":
        raise ValueError("scaling runs need a blobs dataset_source")
    if grid[-1] > MAX_FEATURES_DEFAULT and not allow_large:
        raise ValueError(
            f"feature counts beyond {MAX_FEATURES_DEFAULT} need allow_large=True"
        )
    _warm_kernels(spec)
    rows: list[dict] = []
    for d in grid:
        source = dict(spec.dataset_source)
        source["n"] = spec.n_train
        source["d"] = d
        try:
            data = resolve_dataset(source, seed=_derive_seed(spec.seed, d))
        except MemoryError as exc:
            rows.append({"d": d, "sample": 0, "failed": True, "error": str(exc)})
            continue
        rows.extend(_scaling_cell(spec, data, {"d": d}))
    return Report(
        kind="feature_scaling",
        meta={"spec": spec.to_dict(), "feature_grid": grid},
        rows=rows,
    )


def run_point_scaling(
    spec: ExperimentSpec, point_grid: list[int], allow_large: bool = False
) -> Report:
    """Timings vs training-set size at a fixed feature count."""
    grid = _check_grid(point_grid, "point")
    if spec.dataset_source["kind"] != "blobs":
        raise ValueError("scaling runs need a blobs dataset_source")
    if any(n % 2 != 0 for n in grid):
        raise ValueError("point grid entries must be even")
    if grid[-1] > MAX_POINTS_DEFAULT and not allow_large:
        raise ValueError(
            f"point counts beyond {MAX_POINTS_DEFAULT} need allow_large=True"
        )
    _warm_kernels(spec)
    rows: list[dict] = []
    for n in grid:
        source = dict(spec.dataset_source)
        source["n"] = n
        try:
            data = resolve_dataset(source, seed=_derive_seed(spec.seed, n))
        except MemoryError as exc:
            rows.append({"n": n, "sample": 0, "failed": True, "error": str(exc)})
            continue
        rows.extend(_scaling_cell(spec, data, {"n": n}))
    return Report(
        kind="point_scaling",
        meta={"spec": spec.to_dict(), "point_grid": grid},
        rows=rows,
    )


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log(y) against log(x)."""
    x = np.log(np.asarray(xs, dtype=np.float64))
    y = np.log(np.asarray(ys, dtype=np.float64))
    if x.size < 2:
        raise ValueError("need at least two points to fit a slope")
    return float(np.polyfit(x, y, 1)[0])
