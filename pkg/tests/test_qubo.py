import json

import numpy as np
import pytest

from qubosvm import (
    Dataset,
    PrecisionVector,
    QuboProblem,
    build_qubo,
    decode_multipliers,
    dual_objective,
    energy,
)

from conftest import (
    oracle_dual,
    oracle_energy,
    random_precision,
    random_two_class_dataset,
)


class TestPrecisionVector:
    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError, match="power of two"):
            PrecisionVector((0.3, 0.5))

    def test_rejects_unsorted(self):
        with pytest.raises(ValueError, match="increasing"):
            PrecisionVector((1.0, 0.5))

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError, match="increasing"):
            PrecisionVector((0.5, 0.5))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            PrecisionVector(())

    def test_default_is_quarter_to_two(self):
        assert PrecisionVector.default().powers == (0.25, 0.5, 1.0, 2.0)

    def test_from_exponents(self):
        pv = PrecisionVector.from_exponents(-2, 4)
        assert pv.powers == (0.25, 0.5, 1.0, 2.0)
        assert pv.max_value == 3.75


class TestBuildQubo:
    def test_two_point_hand_instance(self, two_point_data, half_precision):
        # hand computation: Gram o YY^T is the all-ones 2x2, scaled by (1/2)(1/2)^2
        prob = build_qubo(two_point_data, half_precision)
        assert prob.A.tolist() == [[0.125, 0.125], [0.125, 0.125]]
        assert prob.b.tolist() == [-0.5, -0.5]
        assert prob.num_variables == 2

    def test_single_unit_bit_is_identity_encoding(self):
        rng = np.random.default_rng(3)
        data = random_two_class_dataset(rng)
        prob = build_qubo(data, PrecisionVector((1.0,)))
        gram = data.X @ data.X.T
        yy = np.outer(data.Y, data.Y)
        assert np.allclose(prob.A, 0.5 * gram * yy)
        assert np.array_equal(prob.b, -np.ones(data.n_points))

    def test_three_points_four_bits_gives_twelve_variables(self):
        data = Dataset(np.arange(6, dtype=float).reshape(3, 2), np.array([1, -1, 1]))
        prob = build_qubo(data, PrecisionVector.default())
        assert prob.num_variables == 12
        assert prob.A.shape == (12, 12)

    def test_single_class_rejected(self):
        data = Dataset(np.ones((3, 2)), np.array([1, 1, 1]))
        with pytest.raises(ValueError, match="both classes"):
            build_qubo(data, PrecisionVector.default())

    def test_negative_penalty_rejected(self, two_point_data, half_precision):
        with pytest.raises(ValueError):
            build_qubo(two_point_data, half_precision, equality_penalty=-1.0)

    def test_matrix_is_symmetric(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            data = random_two_class_dataset(rng)
            prob = build_qubo(data, random_precision(rng))
            assert np.array_equal(prob.A, prob.A.T)

    def test_permutation_equivariance(self):
        # permuting training points permutes the K x K blocks of A
        rng = np.random.default_rng(5)
        X = rng.normal(size=(3, 2))
        Y = np.array([1, -1, 1])
        pv = PrecisionVector((0.5, 1.0))
        k = pv.k_bits
        base = build_qubo(Dataset(X, Y), pv)
        perm = np.array([2, 0, 1])
        permuted = build_qubo(Dataset(X[perm], Y[perm]), pv)
        bit_perm = np.concatenate([np.arange(p * k, (p + 1) * k) for p in perm])
        assert np.array_equal(permuted.A, base.A[np.ix_(bit_perm, bit_perm)])
        assert np.array_equal(permuted.b, base.b[bit_perm])


class TestEnergy:
    def test_all_zero_bits_have_zero_energy(self, two_point_data, half_precision):
        prob = build_qubo(two_point_data, half_precision)
        assert energy(prob, [0, 0]) == 0.0

    def test_hand_values(self, two_point_data, half_precision):
        prob = build_qubo(two_point_data, half_precision)
        assert energy(prob, [1, 1]) == pytest.approx(-0.5)
        assert energy(prob, [1, 0]) == pytest.approx(-0.375)

    def test_matches_loop_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            data = random_two_class_dataset(rng)
            prob = build_qubo(data, random_precision(rng))
            bits = rng.integers(0, 2, prob.num_variables)
            expected = oracle_energy(prob.A, prob.b, bits)
            assert energy(prob, bits) == pytest.approx(expected, rel=1e-12, abs=1e-12)

    def test_wrong_length_rejected(self, two_point_data, half_precision):
        prob = build_qubo(two_point_data, half_precision)
        with pytest.raises(ValueError, match="length"):
            energy(prob, [1, 0, 1])

    def test_non_binary_rejected(self, two_point_data, half_precision):
        prob = build_qubo(two_point_data, half_precision)
        with pytest.raises(ValueError, match="0 or 1"):
            energy(prob, [0.5, 0.5])


class TestDecodeMultipliers:
    def test_single_bit(self):
        lam = decode_multipliers([1, 1], PrecisionVector((0.5,)), 2)
        assert lam.tolist() == [0.5, 0.5]

    def test_positional_weights(self):
        lam = decode_multipliers([0, 1, 0, 1], PrecisionVector((0.25, 0.5)), 2)
        assert lam.tolist() == [0.5, 0.5]

    def test_sum_of_powers(self):
        lam = decode_multipliers([1, 1, 1, 1], PrecisionVector((0.25, 0.5)), 2)
        assert lam.tolist() == [0.75, 0.75]

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            decode_multipliers([1, 0, 1], PrecisionVector((0.25, 0.5)), 2)

    def test_linear_under_disjoint_supports(self):
        rng = np.random.default_rng(19)
        for _ in range(50):
            pv = random_precision(rng)
            n = int(rng.integers(1, 6))
            m = n * pv.k_bits
            mask = rng.integers(0, 2, m).astype(bool)
            a = np.where(mask, rng.integers(0, 2, m), 0)
            b = np.where(~mask, rng.integers(0, 2, m), 0)
            merged = decode_multipliers(a + b, pv, n)
            split = decode_multipliers(a, pv, n) + decode_multipliers(b, pv, n)
            assert np.allclose(merged, split)


class TestEnergyEquivalence:
    """Central property: QUBO energy equals the dual at the decoded point."""

    def test_randomized_triples(self):
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            data = random_two_class_dataset(rng)
            pv = random_precision(rng)
            prob = build_qubo(data, pv)
            bits = rng.integers(0, 2, prob.num_variables)
            lam = decode_multipliers(bits, pv, data.n_points)
            e = energy(prob, bits)
            assert abs(e - dual_objective(data, lam)) <= 1e-9 * (1 + abs(e))

    def test_against_double_sum_oracle(self):
        rng = np.random.default_rng(77)
        for _ in range(100):
            data = random_two_class_dataset(rng)
            pv = random_precision(rng)
            prob = build_qubo(data, pv)
            bits = rng.integers(0, 2, prob.num_variables)
            lam = decode_multipliers(bits, pv, data.n_points)
            e = energy(prob, bits)
            assert e == pytest.approx(oracle_dual(data.X, data.Y, lam), rel=1e-9, abs=1e-9)

    def test_equality_penalty_adds_balance_square(self):
        rng = np.random.default_rng(55)
        mu = 0.7
        for _ in range(50):
            data = random_two_class_dataset(rng)
            pv = random_precision(rng)
            plain = build_qubo(data, pv, equality_penalty=0.0)
            penalized = build_qubo(data, pv, equality_penalty=mu)
            bits = rng.integers(0, 2, plain.num_variables)
            lam = decode_multipliers(bits, pv, data.n_points)
            gain = mu * float(lam @ data.Y) ** 2
            assert energy(penalized, bits) == pytest.approx(
                energy(plain, bits) + gain, rel=1e-9, abs=1e-9
            )


class TestQuboJson:
    def test_round_trip_preserves_energies(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            data = random_two_class_dataset(rng)
            prob = build_qubo(data, random_precision(rng))
            doc = json.loads(json.dumps(prob.to_json_dict()))
            back = QuboProblem.from_json_dict(doc)
            assert np.array_equal(back.A, prob.A)
            assert np.array_equal(back.b, prob.b)
            bits = rng.integers(0, 2, prob.num_variables)
            assert energy(back, bits) == energy(prob, bits)

    def test_quadratic_entries_are_upper_triangular(self, two_point_data, half_precision):
        doc = build_qubo(two_point_data, half_precision).to_json_dict()
        assert all(i <= j for i, j, _ in doc["quadratic"])
        assert doc["n_points"] == 2 and doc["k_bits"] == 1

    def test_upper_triangular_matrix_preserves_energy(self):
        rng = np.random.default_rng(29)
        data = random_two_class_dataset(rng)
        prob = build_qubo(data, random_precision(rng))
        U = prob.upper_triangular()
        assert np.array_equal(U, np.triu(U))
        for _ in range(10):
            z = rng.integers(0, 2, prob.num_variables).astype(float)
            assert z @ U @ z == pytest.approx(energy(prob, z), rel=1e-12, abs=1e-12)


class TestQuboProblemValidation:
    def test_asymmetric_matrix_rejected(self):
        A = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(ValueError, match="symmetric"):
            QuboProblem(A, np.zeros(2), 2, 1)

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            QuboProblem(np.zeros((2, 2)), np.zeros(2), 2, 2)
