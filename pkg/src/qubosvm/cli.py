"""Command-line entry points.

Every subcommand exits 0 on success. Failures print a machine-readable
JSON object {"error": {"type": ..., "message": ...}} to stderr and exit
nonzero. Bench subcommands read an experiment config (JSON) and accept a
few flag overrides; reports are written as JSON and/or CSV.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

import numpy as np

from . import bench
from .baseline import train_classical
from .datasets import load_csv, normalize, save_csv
from .qubo import PrecisionVector, build_qubo, decode_multipliers
from .solvers import SaParams, solve_exhaustive, solve_sa
from .svm import SvmModel, accuracy, recover_model


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _load_dataset(args) -> "object":
    data = load_csv(
        args.data, _label_column(args.label_column), args.positive_class, args.negative_class
    )
    if args.normalize != "none":
        data = normalize(data, args.normalize)
    return data


def _label_column(value: str):
    try:
        return int(value)
    except ValueError:
        return value


def _add_dataset_args(parser) -> None:
    parser.add_argument("--data", required=True, help="CSV dataset path")
    parser.add_argument("--label-column", required=True, dest="label_column",
                        help="label column name or zero-based index")
    parser.add_argument("--positive-class", required=True, dest="positive_class")
    parser.add_argument("--negative-class", required=True, dest="negative_class")
    parser.add_argument("--normalize", default="min_max",
                        choices=["min_max", "z_score", "none"])


def _add_precision_args(parser) -> None:
    parser.add_argument("--k-bits", type=int, default=4, dest="k_bits")
    parser.add_argument("--min-exponent", type=int, default=-2, dest="min_exponent")


def _precision(args) -> PrecisionVector:
    return PrecisionVector.from_exponents(args.min_exponent, args.k_bits)


def _cmd_generate(args) -> int:
    if args.kind == "blobs":
        from .datasets import generate_blobs

        data = generate_blobs(args.n, args.d, args.seed, args.center_distance)
    else:
        from .datasets import generate_hyperplane

        w = np.asarray([float(v) for v in args.w.split(",")])
        data = generate_hyperplane(args.n, args.d, w, args.b, args.seed)
    save_csv(data, args.out)
    _emit({"path": args.out, "n": data.n_points, "d": data.n_features})
    return 0


def _cmd_train(args) -> int:
    data = _load_dataset(args)
    result: dict = {"method": args.method, "n": data.n_points, "d": data.n_features}
    if args.method == "classical":
        from .baseline import BaselineParams

        model = train_classical(
            data,
            BaselineParams(C=args.C, tolerance=args.tolerance, max_passes=args.max_passes),
        )
    else:
        problem = build_qubo(data, _precision(args), args.equality_penalty)
        if args.method == "qubo-exact":
            solution = solve_exhaustive(problem)
        else:
            solution = solve_sa(
                problem,
                SaParams(num_reads=args.reads, sweeps_per_read=args.sweeps, seed=args.seed),
            )
        lam = decode_multipliers(solution.bits, _precision(args), data.n_points)
        model = recover_model(data, lam)
        result["energy"] = solution.energy
    result["train_accuracy"] = accuracy(model, data)
    with open(args.out, "w") as fh:
        json.dump(model.to_json_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    result["model"] = args.out
    _emit(result)
    return 0


def _cmd_evaluate(args) -> int:
    data = _load_dataset(args)
    with open(args.model) as fh:
        model = SvmModel.from_json_dict(json.load(fh))
    _emit({"accuracy": accuracy(model, data), "n": data.n_points})
    return 0


def _cmd_qubo_export(args) -> int:
    data = _load_dataset(args)
    problem = build_qubo(data, _precision(args), args.equality_penalty)
    with open(args.out, "w") as fh:
        json.dump(problem.to_json_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    _emit({"path": args.out, "num_variables": problem.num_variables})
    return 0


def _load_spec(args) -> bench.ExperimentSpec:
    with open(args.config) as fh:
        doc = json.load(fh)
    spec = bench.ExperimentSpec.from_dict(doc)
    if args.seed is not None:
        spec = replace(spec, seed=args.seed)
    if args.repetitions is not None:
        spec = replace(spec, repetitions=args.repetitions)
    if args.n_train is not None:
        spec = replace(spec, n_train=args.n_train)
    if args.sweeps is not None:
        spec = replace(spec, sa_params=replace(spec.sa_params, sweeps_per_read=args.sweeps))
    if args.reads is not None:
        spec = replace(spec, sa_params=replace(spec.sa_params, num_reads=args.reads))
    return spec


def _write_report(report: bench.Report, args) -> None:
    if args.out_json:
        report.write_json(args.out_json)
    if args.out_csv:
        report.write_csv(args.out_csv)
    _emit(
        {
            "kind": report.kind,
            "rows": len(report.rows),
            "aggregates": report.aggregates,
            "out_json": args.out_json,
            "out_csv": args.out_csv,
        }
    )


def _grid(value: str) -> list[int]:
    return [int(v) for v in value.split(",")]


def _cmd_accuracy_bench(args) -> int:
    _write_report(bench.run_accuracy_experiment(_load_spec(args)), args)
    return 0


def _cmd_sweep_bench(args) -> int:
    report = bench.run_sweep_sensitivity(_load_spec(args), _grid(args.grid))
    _write_report(report, args)
    return 0


def _cmd_feature_bench(args) -> int:
    report = bench.run_feature_scaling(
        _load_spec(args), _grid(args.grid), allow_large=args.large
    )
    _write_report(report, args)
    return 0


def _cmd_point_bench(args) -> int:
    report = bench.run_point_scaling(
        _load_spec(args), _grid(args.grid), allow_large=args.large
    )
    _write_report(report, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qubosvm",
        description="Train linear SVMs via QUBO sampling and benchmark them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic dataset to CSV")
    p.add_argument("--kind", choices=["blobs", "hyperplane"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--center-distance", type=float, default=10.0, dest="center_distance")
    p.add_argument("--w", default="", help="comma-separated weights (hyperplane)")
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("train", help="train one model from a CSV dataset")
    _add_dataset_args(p)
    _add_precision_args(p)
    p.add_argument("--method", choices=["classical", "qubo-sa", "qubo-exact"],
                   default="qubo-sa")
    p.add_argument("--equality-penalty", type=float, default=0.0, dest="equality_penalty")
    p.add_argument("--reads", type=int, default=10)
    p.add_argument("--sweeps", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--C", type=float, default=1e6)
    p.add_argument("--tolerance", type=float, default=1e-6)
    p.add_argument("--max-passes", type=int, default=100_000, dest="max_passes")
    p.add_argument("--out", required=True, help="model JSON output path")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("evaluate", help="score a model JSON against a CSV dataset")
    _add_dataset_args(p)
    p.add_argument("--model", required=True)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("qubo-export", help="write the QUBO for a dataset as JSON")
    _add_dataset_args(p)
    _add_precision_args(p)
    p.add_argument("--equality-penalty", type=float, default=0.0, dest="equality_penalty")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_qubo_export)

    for name, func, needs_grid, default_grid in (
        ("accuracy-bench", _cmd_accuracy_bench, False, ""),
        ("sweep-bench", _cmd_sweep_bench, True, "20,100,1000"),
        ("feature-bench", _cmd_feature_bench, True,
         "256,512,1024,2048,4096,8192,16384"),
        ("point-bench", _cmd_point_bench, True,
         ",".join(str(n) for n in range(8, 56, 2))),
    ):
        p = sub.add_parser(name, help=f"run the {name.replace('-', ' ')} experiment")
        p.add_argument("--config", required=True, help="experiment spec JSON file")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--repetitions", type=int, default=None)
        p.add_argument("--n-train", type=int, default=None, dest="n_train")
        p.add_argument("--sweeps", type=int, default=None)
        p.add_argument("--reads", type=int, default=None)
        p.add_argument("--out-json", default=None, dest="out_json")
        p.add_argument("--out-csv", default=None, dest="out_csv")
        if needs_grid:
            p.add_argument("--grid", default=default_grid)
        if name in ("feature-bench", "point-bench"):
            p.add_argument("--large", action="store_true",
                           help="lift the desk-scale grid caps")
        p.set_defaults(func=func)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - single boundary for error reporting
        json.dump(
            {"error": {"type": type(exc).__name__, "message": str(exc)}},
            sys.stderr,
            indent=2,
        )
        sys.stderr.write("\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
