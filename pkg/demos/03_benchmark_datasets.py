# The real-data benchmark rows: the three iris class pairs (20 train / 80
# test) and the breast-cancer diagnostic set (52 train / 517 test), ten
# repetitions each. The inseparable versicolor-virginica pair is where
# accuracies drop and spread for every method.

from pathlib import Path

from qubosvm import BaselineParams, ExperimentSpec, run_accuracy_experiment

DATA = Path(__file__).resolve().parent.parent / "data"
IRIS = {"kind": "csv", "path": str(DATA / "iris.csv"), "label_column": "species"}

ROWS = [
    ("setosa - virginica", {**IRIS, "positive_class": "setosa",
                            "negative_class": "virginica"}, 20, 1e6),
    ("setosa - versicolor", {**IRIS, "positive_class": "setosa",
                             "negative_class": "versicolor"}, 20, 1e6),
    ("versicolor - virginica", {**IRIS, "positive_class": "versicolor",
                                "negative_class": "virginica"}, 20, 1e6),
    ("wbc (M vs B)", {"kind": "csv", "path": str(DATA / "wbc.csv"),
                      "label_column": "diagnosis", "positive_class": "M",
                      "negative_class": "B"}, 52, 1.0),
]


def fmt(agg, key):
    stats = agg.get(key)
    if stats is None:
        return "--"
    return f"{stats['mean'] * 100:.1f}±{stats['std'] * 100:.1f}"


print(f"{'pair':24s} {'train/test':>10s} {'sa test':>10s} {'classical test':>15s} "
      f"{'failures':>9s}")
for name, source, n_train, C in ROWS:
    spec = ExperimentSpec(
        dataset_source=source,
        n_train=n_train,
        repetitions=10,
        equality_penalty=1.0,
        baseline_params=BaselineParams(C=C),
        seed=1,
    )
    report = run_accuracy_experiment(spec)
    agg = report.aggregates
    n_test = report.rows[0]["n_test"]
    print(f"{name:24s} {f'{n_train}/{n_test}':>10s} "
          f"{fmt(agg, 'sa_test_accuracy'):>10s} "
          f"{fmt(agg, 'classical_test_accuracy'):>15s} "
          f"{agg['sa_failures']:>9d}")
