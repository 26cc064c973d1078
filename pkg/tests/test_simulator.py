"""Tests for the statevector simulator.

Gate applications are checked against dense Kronecker-product matrices
from tests.oracles.
"""

import math

import numpy as np
import pytest

from src.models.errors import InvalidArgumentError
from src.simulator import (
    PAULI_X,
    PAULI_Z,
    EntanglerKind,
    Gate,
    StateVector,
    Su2Angles,
    adjoint_circuit,
    apply_controlled,
    apply_entangler,
    apply_gate,
    apply_single,
    entangler_gates,
    inner_product,
    prob_all_zero,
    prob_first_qubit_zero,
    run_circuit,
    ry,
    rz,
    su2_derivatives,
    su2_matrix,
)
from src.simulator.operations import evolve_batch, to_flat
from tests.oracles import (
    dense_controlled,
    dense_gate,
    dense_run,
    dense_single,
    random_state,
    random_unitary,
)


class TestSu2:
    """Tests for the SU(2) rotation and its derivatives."""

    def test_euler_order(self):
        """U(a, b, c) is Rz(c) Ry(b) Rz(a)."""
        a, b, c = 0.3, -1.2, 2.5
        expected = rz(c) @ ry(b) @ rz(a)

        assert np.allclose(su2_matrix([a, b, c]), expected, atol=1e-14)
        assert np.allclose(su2_matrix(Su2Angles(a, b, c)), expected, atol=1e-14)

    def test_special_unitary(self):
        """Random angles give unitary matrices with determinant 1."""
        rng = np.random.default_rng(1)
        for angles in rng.uniform(-np.pi, np.pi, size=(20, 3)):
            u = su2_matrix(angles)
            assert np.allclose(u @ u.conj().T, np.eye(2), atol=1e-13)
            assert abs(np.linalg.det(u) - 1.0) < 1e-13

    def test_zero_angles_identity(self):
        """U(0, 0, 0) is the identity."""
        assert np.allclose(su2_matrix([0.0, 0.0, 0.0]), np.eye(2))

    def test_stacked_angles(self):
        """A (..., 3) angle array gives a matching stack of matrices."""
        rng = np.random.default_rng(2)
        angles = rng.uniform(-np.pi, np.pi, size=(4, 5, 3))
        stack = su2_matrix(angles)

        assert stack.shape == (4, 5, 2, 2)
        assert np.allclose(stack[2, 3], su2_matrix(angles[2, 3]))

    def test_derivatives_match_finite_differences(self):
        """su2_derivatives agrees with central differences."""
        angles = np.array([0.7, -0.4, 1.9])
        derivatives = su2_derivatives(angles)
        step = 1e-6
        for index in range(3):
            shift = np.zeros(3)
            shift[index] = step
            numeric = (su2_matrix(angles + shift) - su2_matrix(angles - shift)) / (
                2 * step
            )
            assert np.allclose(derivatives[index], numeric, atol=1e-8)

    def test_non_finite_angle_rejected(self):
        """NaN or infinite angles raise."""
        with pytest.raises(InvalidArgumentError):
            su2_matrix([0.0, math.nan, 0.0])
        with pytest.raises(ValueError, match="finite"):
            Su2Angles(0.0, 0.0, math.inf)


class TestGateApplication:
    """Tests for single and controlled gate application."""

    def test_single_qubit_against_dense(self):
        """apply_single matches the Kronecker-product matrix."""
        rng = np.random.default_rng(10)
        for _ in range(100):
            n = int(rng.integers(1, 5))
            qubit = int(rng.integers(0, n))
            u = random_unitary(rng)
            psi = random_state(n, rng)

            result = apply_single(StateVector(n, psi), qubit, u).amplitudes
            expected = dense_single(n, qubit, u) @ psi

            assert np.max(np.abs(result - expected)) <= 1e-12

    def test_controlled_against_dense(self):
        """apply_controlled matches |0><0| (x) 1 + |1><1| (x) u."""
        rng = np.random.default_rng(11)
        for _ in range(100):
            n = int(rng.integers(2, 5))
            control, target = rng.choice(n, size=2, replace=False)
            u = random_unitary(rng)
            psi = random_state(n, rng)

            result = apply_controlled(
                StateVector(n, psi), int(control), int(target), u
            ).amplitudes
            expected = dense_controlled(n, int(control), int(target), u) @ psi

            assert np.max(np.abs(result - expected)) <= 1e-12

    def test_pauli_x_flips_qubit_zero(self):
        """X on qubit 0 maps |00> to |10>; qubit 0 is the most significant bit."""
        state = apply_single(StateVector.zero(2), 0, PAULI_X)

        assert np.allclose(state.amplitudes, StateVector.basis([1, 0]).amplitudes)
        assert prob_first_qubit_zero(state) == pytest.approx(0.0)

    def test_cnot_needs_control_set(self):
        """A controlled X leaves |00> alone and flips the target of |10>."""
        untouched = apply_controlled(StateVector.zero(2), 0, 1, PAULI_X)
        flipped = apply_controlled(StateVector.basis([1, 0]), 0, 1, PAULI_X)

        assert np.allclose(untouched.amplitudes, StateVector.zero(2).amplitudes)
        assert np.allclose(flipped.amplitudes, StateVector.basis([1, 1]).amplitudes)

    def test_out_of_range_qubit(self):
        """Qubit indices outside [0, n) raise."""
        with pytest.raises(InvalidArgumentError, match="out of range"):
            apply_single(StateVector.zero(2), 2, PAULI_X)
        with pytest.raises(InvalidArgumentError, match="out of range"):
            apply_controlled(StateVector.zero(2), -1, 0, PAULI_X)

    def test_control_equals_target(self):
        """A controlled gate on a single qubit raises."""
        with pytest.raises(InvalidArgumentError, match="differ"):
            apply_controlled(StateVector.zero(2), 1, 1, PAULI_X)

    def test_batched_gate_rejected_by_apply_gate(self):
        """apply_gate only takes unbatched gates."""
        gate = Gate(matrix=np.stack([PAULI_X, PAULI_Z]), target=0)

        with pytest.raises(InvalidArgumentError, match="unbatched"):
            apply_gate(StateVector.zero(1), gate)

    def test_norm_preserved(self):
        """Unitary gates keep the state normalized."""
        rng = np.random.default_rng(12)
        state = StateVector(3, random_state(3, rng))
        for qubit in range(3):
            state = apply_single(state, qubit, random_unitary(rng))

        assert state.norm() == pytest.approx(1.0, abs=1e-12)


class TestStateVector:
    """Tests for the StateVector type."""

    def test_zero_state(self):
        """|0...0> has all probability on the first amplitude."""
        state = StateVector.zero(3)

        assert prob_all_zero(state) == 1.0
        assert prob_first_qubit_zero(state) == 1.0

    def test_unnormalized_rejected(self):
        """Amplitudes must be normalized."""
        with pytest.raises(InvalidArgumentError, match="normalized"):
            StateVector(1, np.array([1.0, 1.0]))

    def test_wrong_length_rejected(self):
        """The amplitude count must be 2**n."""
        with pytest.raises(InvalidArgumentError, match="Expected 4"):
            StateVector(2, np.array([1.0, 0.0]))

    def test_from_amplitudes_normalizes(self):
        """from_amplitudes rescales to unit norm."""
        state = StateVector.from_amplitudes([3.0, 4.0])

        assert np.allclose(state.amplitudes, [0.6, 0.8])

    def test_inner_product_conjugate_linear(self):
        """<a|b> conjugates the first argument."""
        a = StateVector(1, np.array([1j, 0.0]))
        b = StateVector(1, np.array([1.0, 0.0]))

        assert inner_product(a, b) == pytest.approx(-1j)
        assert inner_product(b, a) == pytest.approx(1j)

    def test_inner_product_dimension_mismatch(self):
        """States of different sizes cannot be compared."""
        with pytest.raises(InvalidArgumentError, match="mismatch"):
            inner_product(StateVector.zero(1), StateVector.zero(2))

    def test_first_qubit_probability(self):
        """P(qubit 0 = 0) sums the upper half of the amplitudes."""
        psi = np.array([0.5, 0.5, 0.5, 0.5])

        assert prob_first_qubit_zero(StateVector(2, psi)) == pytest.approx(0.5)


class TestEntangler:
    """Tests for the CNOT and CZ cascades."""

    def test_cnot_cascade_propagates_bit(self):
        """|100> becomes |111> under the CNOT cascade."""
        state = apply_entangler(StateVector.basis([1, 0, 0]), EntanglerKind.CNOT_CASCADE)

        assert np.allclose(state.amplitudes, StateVector.basis([1, 1, 1]).amplitudes)

    def test_cz_cascade_against_dense(self):
        """The CZ cascade equals the product of dense controlled-Z matrices."""
        rng = np.random.default_rng(20)
        psi = random_state(3, rng)
        expected = dense_controlled(3, 1, 2, PAULI_Z) @ dense_controlled(
            3, 0, 1, PAULI_Z
        ) @ psi

        state = apply_entangler(StateVector(3, psi), EntanglerKind.CZ_CASCADE)

        assert np.allclose(state.amplitudes, expected, atol=1e-12)

    def test_two_qubit_cnot_cascade_is_involution(self):
        """Applying the 2-qubit CNOT cascade twice leaves any state unchanged."""
        rng = np.random.default_rng(21)
        states = [StateVector(2, random_state(2, rng)) for _ in range(5)]
        states += [StateVector.basis(bits) for bits in ([0, 0], [0, 1], [1, 0], [1, 1])]

        for state in states:
            twice = apply_entangler(
                apply_entangler(state, EntanglerKind.CNOT_CASCADE),
                EntanglerKind.CNOT_CASCADE,
            )
            assert np.allclose(twice.amplitudes, state.amplitudes, atol=1e-12)

    def test_two_qubit_cnot_cascade_dense_square(self):
        """The dense 2-qubit cascade matrix squares to the identity."""
        gates = entangler_gates(EntanglerKind.CNOT_CASCADE, 2)
        dense = np.eye(4, dtype=complex)
        for gate in gates:
            dense = dense_gate(2, gate) @ dense

        assert np.allclose(dense @ dense, np.eye(4), atol=1e-12)

    def test_gate_order(self):
        """Cascade gates run control s -> target s + 1 in ascending s."""
        gates = entangler_gates(EntanglerKind.CNOT_CASCADE, 4)

        assert [(g.control, g.target) for g in gates] == [(0, 1), (1, 2), (2, 3)]

    def test_single_qubit_rejected(self):
        """An entangler needs two qubits."""
        with pytest.raises(InvalidArgumentError, match="at least 2"):
            apply_entangler(StateVector.zero(1), EntanglerKind.CNOT_CASCADE)


class TestCircuits:
    """Tests for gate lists, adjoints and batched evolution."""

    def _random_circuit(self, rng, n, length):
        gates = []
        for _ in range(length):
            if n > 1 and rng.random() < 0.4:
                control, target = rng.choice(n, size=2, replace=False)
                gates.append(
                    Gate(random_unitary(rng), target=int(target), control=int(control))
                )
            else:
                gates.append(Gate(random_unitary(rng), target=int(rng.integers(0, n))))
        return gates

    def test_run_circuit_against_dense(self):
        """Random circuits on up to 4 qubits match the dense product."""
        rng = np.random.default_rng(30)
        for _ in range(200):
            n = int(rng.integers(1, 5))
            gates = self._random_circuit(rng, n, 6)

            result = run_circuit(gates, n).amplitudes

            assert np.max(np.abs(result - dense_run(gates, n))) <= 1e-12

    def test_adjoint_returns_to_zero(self):
        """S followed by its adjoint is the identity."""
        rng = np.random.default_rng(31)
        gates = self._random_circuit(rng, 3, 10)

        state = run_circuit(gates + adjoint_circuit(gates), 3)

        assert prob_all_zero(state) == pytest.approx(1.0, abs=1e-12)

    def test_batched_evolution(self):
        """Each batch element follows its own matrices."""
        rng = np.random.default_rng(32)
        batch = 5
        stacks = [np.stack([random_unitary(rng) for _ in range(batch)]) for _ in range(3)]
        gates = [
            Gate(stacks[0], target=0),
            Gate(stacks[1], target=1, control=0),
            Gate(random_unitary(rng), target=2),
            Gate(stacks[2], target=1),
        ]

        amplitudes = to_flat(evolve_batch(gates, 3, batch))

        for element in range(batch):
            expected = dense_run(gates, 3, element=element)
            assert np.allclose(amplitudes[element], expected, atol=1e-12)
