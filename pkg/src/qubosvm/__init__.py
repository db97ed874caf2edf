"""Linear SVM training via QUBO sampling, with a classical comparator.

The pipeline: encode a training set's Lagrangian dual as a QUBO over
fixed-point bits (:mod:`qubosvm.qubo`), sample low-energy bit vectors
(:mod:`qubosvm.solvers`), decode them back to multipliers and recover a
classifier (:mod:`qubosvm.svm`), and compare against a classical dual
solver (:mod:`qubosvm.baseline`). :mod:`qubosvm.datasets` supplies data
and :mod:`qubosvm.bench` the experiment harness behind the CLI.
"""

from . import errors
from .baseline import BaselineParams, SmoResult, smo_solve, train_classical
from .bench import (
    ExperimentSpec,
    Report,
    loglog_slope,
    run_accuracy_experiment,
    run_feature_scaling,
    run_point_scaling,
    run_sweep_sensitivity,
)
from .datasets import (
    Dataset,
    NormalizationParams,
    SplitSpec,
    apply_normalization,
    generate_blobs,
    generate_hyperplane,
    load_csv,
    normalization_params,
    normalize,
    save_csv,
    split_stratified,
)
from .qubo import (
    PrecisionVector,
    QuboProblem,
    build_qubo,
    decode_multipliers,
    energy,
)
from .solvers import (
    EXHAUSTIVE_LIMIT,
    SWEEP_TIERS,
    BinarySolution,
    SaParams,
    default_beta_range,
    incremental_delta,
    solve_exhaustive,
    solve_sa,
)
from .svm import (
    SUPPORT_THRESHOLD,
    SvmModel,
    accuracy,
    dual_objective,
    predict,
    recover_model,
)

__version__ = "0.1.0"

__all__ = [
    "BaselineParams",
    "BinarySolution",
    "Dataset",
    "EXHAUSTIVE_LIMIT",
    "ExperimentSpec",
    "NormalizationParams",
    "PrecisionVector",
    "QuboProblem",
    "Report",
    "SUPPORT_THRESHOLD",
    "SWEEP_TIERS",
    "SaParams",
    "SmoResult",
    "SplitSpec",
    "SvmModel",
    "accuracy",
    "apply_normalization",
    "build_qubo",
    "decode_multipliers",
    "default_beta_range",
    "dual_objective",
    "energy",
    "errors",
    "generate_blobs",
    "generate_hyperplane",
    "incremental_delta",
    "load_csv",
    "loglog_slope",
    "normalization_params",
    "normalize",
    "predict",
    "recover_model",
    "run_accuracy_experiment",
    "run_feature_scaling",
    "run_point_scaling",
    "run_sweep_sensitivity",
    "save_csv",
    "smo_solve",
    "solve_exhaustive",
    "solve_sa",
    "split_stratified",
    "train_classical",
]
