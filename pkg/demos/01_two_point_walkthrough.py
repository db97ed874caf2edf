# Smallest possible walkthrough: two mirrored points on a line, one bit
# per multiplier. Every number printed here can be checked by hand.

import numpy as np

from qubosvm import (
    Dataset,
    PrecisionVector,
    SaParams,
    accuracy,
    build_qubo,
    decode_multipliers,
    dual_objective,
    energy,
    recover_model,
    solve_exhaustive,
    solve_sa,
)

data = Dataset(X=np.array([[1.0], [-1.0]]), Y=np.array([1, -1]))
precision = PrecisionVector((0.5,))

print("=== encoding ===")
problem = build_qubo(data, precision)
print("A =", problem.A.tolist())
print("b =", problem.b.tolist())
print("variables:", problem.num_variables)

print("\n=== energies of all four states ===")
for bits in ([0, 0], [0, 1], [1, 0], [1, 1]):
    lam = decode_multipliers(bits, precision, data.n_points)
    print(f"bits={bits} energy={energy(problem, bits):+.4f} "
          f"decoded multipliers={lam.tolist()} "
          f"dual={dual_objective(data, lam):+.4f}")

print("\n=== exhaustive ground truth ===")
exact = solve_exhaustive(problem)
print("best bits:", exact.bits.tolist(), "energy:", exact.energy)

print("\n=== annealing finds the same state ===")
sampled = solve_sa(problem, SaParams(num_reads=10, sweeps_per_read=1000, seed=7))
print("sampled bits:", sampled.bits.tolist(), "energy:", sampled.energy,
      "from read", sampled.read_index)

print("\n=== classifier recovery ===")
model = recover_model(data, decode_multipliers(exact.bits, precision, 2))
print("w =", model.w.tolist(), " bias =", model.bias)
print("support indices:", model.support_indices.tolist())
print("training accuracy:", accuracy(model, data))
