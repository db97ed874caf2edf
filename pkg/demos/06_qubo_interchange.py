# The encoding as an interchange artifact: export a problem as JSON for
# an external sampler, bring a solution back, and verify everything lines
# up. Also shows the folded single-matrix form some samplers prefer.

import json

import numpy as np

from qubosvm import (
    PrecisionVector,
    QuboProblem,
    SaParams,
    accuracy,
    build_qubo,
    decode_multipliers,
    energy,
    generate_blobs,
    normalize,
    recover_model,
    solve_sa,
)

data = normalize(generate_blobs(n=10, d=3, seed=4, center_distance=8.0))
precision = PrecisionVector.from_exponents(-2, 3)
problem = build_qubo(data, precision)

doc = problem.to_json_dict()
print("JSON document keys:", sorted(doc))
print("nonzero quadratic terms:", len(doc["quadratic"]), "of",
      problem.num_variables * (problem.num_variables + 1) // 2)

restored = QuboProblem.from_json_dict(json.loads(json.dumps(doc)))
bits = np.random.default_rng(0).integers(0, 2, problem.num_variables)
print("energy preserved through JSON:",
      energy(problem, bits) == energy(restored, bits))

U = problem.upper_triangular()
z = bits.astype(float)
print("folded upper-triangular form agrees:",
      np.isclose(z @ U @ z, energy(problem, bits)))

solution = solve_sa(problem, SaParams(seed=11))
print("\nsampler output:", json.dumps(solution.to_json_dict())[:72], "...")
model = recover_model(data, decode_multipliers(solution.bits, precision, data.n_points))
print("decoded model training accuracy:", accuracy(model, data))
