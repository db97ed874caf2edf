# Where the sampled pipeline wins structurally: its sampling phase never
# touches the d-dimensional data, while classical training must. Feature
# counts sweep 2^8..2^14 at 52 points; point counts sweep 8..54 at fixed
# d. Log-log slopes summarize the growth laws.

from qubosvm import (
    BaselineParams,
    ExperimentSpec,
    PrecisionVector,
    SaParams,
    loglog_slope,
    run_feature_scaling,
    run_point_scaling,
)

d_grid = [256, 512, 1024, 2048, 4096, 8192, 16384]
feature_spec = ExperimentSpec(
    dataset_source={"kind": "blobs", "n": 52, "d": 2, "center_distance": 10.0},
    n_train=52,
    repetitions=1,
    sa_params=SaParams(num_reads=10, sweeps_per_read=100),
    baseline_params=BaselineParams(tolerance=1e-3),
    seed=3,
)
report = run_feature_scaling(feature_spec, d_grid)
cells = report.aggregates["per_cell"]

print("feature scaling at N = 52 (median of 3 per cell)")
print(f"{'d':>6s} {'classical ms':>13s} {'build ms':>9s} {'sample ms':>10s}")
for d in d_grid:
    entry = cells[str(d)]
    print(f"{d:>6d} {entry['median_classical_train_seconds']*1e3:>13.3f} "
          f"{entry['median_qubo_build_seconds']*1e3:>9.3f} "
          f"{entry['median_sa_sample_seconds']*1e3:>10.1f}")
for phase, label in (("classical_train_seconds", "classical training"),
                     ("qubo_build_seconds", "encoding build"),
                     ("sa_sample_seconds", "sampling")):
    ys = [cells[str(d)][f"median_{phase}"] for d in d_grid]
    print(f"log-log slope of {label} in d: {loglog_slope(d_grid, ys):+.2f}")

print("\npoint scaling at fixed d = 64 with a 12-bit encoding")
n_grid = list(range(8, 56, 2))
point_spec = ExperimentSpec(
    dataset_source={"kind": "blobs", "n": 8, "d": 64, "center_distance": 10.0},
    n_train=8,
    repetitions=1,
    precision=PrecisionVector.from_exponents(-8, 12),
    sa_params=SaParams(num_reads=5, sweeps_per_read=50),
    seed=3,
)
report = run_point_scaling(point_spec, n_grid)
cells = report.aggregates["per_cell"]
ys = [cells[str(n)]["median_qubo_build_seconds"] for n in n_grid]
print(f"encoding build time grows with slope {loglog_slope(n_grid, ys):+.2f} in N "
      f"(quadratic conversion)")
