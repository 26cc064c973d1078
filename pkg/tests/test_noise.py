"""Tests for Kraus channels and noisy density-matrix simulation."""

import math

import numpy as np
import pytest

from src.kernel import EqkSpec, KernelKind, cross_kernel, gram_matrix, kernel_value
from src.models.errors import InvalidArgumentError
from src.noise import (
    ALPHA_REFERENCE,
    GAMMA_REFERENCE,
    TAU_GRID,
    DensityMatrix,
    NoiseParams,
    amplitude_damping_kraus,
    apply_channel,
    apply_gate_noisy,
    damping_probability,
    evolve_density,
    noisy_accuracy,
    noisy_cross_kernel,
    noisy_gram_matrix,
    noisy_kernel_value,
    noisy_qnn_prob,
    noisy_qnn_probs,
    phase_flip_kraus,
    relative_improvement,
    tau_noise,
)
from src.qnn import QnnParams, accuracy, first_qubit_zero_probs, qnn_circuit
from src.simulator import PAULI_X, Gate, StateVector
from tests.oracles import dense_kraus, dense_noisy_run, superoperator


def _params(n, layers, seed):
    return QnnParams.random(n, layers, np.random.default_rng(seed))


def _points(m, seed):
    return np.random.default_rng(seed).uniform(-1, 1, size=(m, 2))


class TestChannels:
    """Tests for the Kraus operators and strength helpers."""

    @pytest.mark.parametrize("p", [0.0, 0.001, 0.03, 0.5, 1.0])
    def test_completeness(self, p):
        """sum_k K_k^dag K_k = 1 for both channels."""
        for kraus in (amplitude_damping_kraus(p), phase_flip_kraus(p)):
            total = sum(k.conj().T @ k for k in kraus)
            assert np.max(np.abs(total - np.eye(2))) <= 1e-12

    def test_amplitude_damping_superoperator(self):
        """Damping moves population gamma from |1> to |0>."""
        gamma = 0.2
        rho = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
        channel = superoperator(amplitude_damping_kraus(gamma))

        out = (channel @ rho.reshape(-1)).reshape(2, 2)

        assert np.allclose(out, np.diag([gamma, 1.0 - gamma]))

    def test_phase_flip_shrinks_coherence(self):
        """Phase flip scales off-diagonal terms by 1 - 2 alpha."""
        alpha = 0.1
        plus = DensityMatrix(1, 0.5 * np.ones((2, 2)))

        out = apply_channel(plus, 0, phase_flip_kraus(alpha))

        assert out.entries[0, 1] == pytest.approx(0.5 * (1 - 2 * alpha))
        assert np.allclose(out.probabilities(), [0.5, 0.5])

    def test_out_of_range_strength(self):
        """Probabilities outside [0, 1] raise."""
        with pytest.raises(InvalidArgumentError, match="gamma"):
            amplitude_damping_kraus(1.5)
        with pytest.raises(InvalidArgumentError, match="alpha"):
            phase_flip_kraus(-0.1)
        with pytest.raises(ValueError):
            NoiseParams(gamma=2.0)

    def test_tau_noise(self):
        """tau sets both strengths; tau = 0 is noiseless."""
        noise = tau_noise(0.02)

        assert (noise.gamma, noise.alpha) == (0.02, 0.02)
        assert tau_noise(0.0).is_noiseless
        assert not NoiseParams(gamma=GAMMA_REFERENCE, alpha=ALPHA_REFERENCE).is_noiseless

    def test_tau_grid(self):
        """The sweep grid runs from 0 to 0.03 in steps of 0.005."""
        assert np.allclose(TAU_GRID, np.arange(7) * 0.005)

    def test_damping_probability(self):
        """p = 1 - exp(-t / T1)."""
        assert damping_probability(0.0, 100.0) == 0.0
        assert damping_probability(50.0, 100.0) == pytest.approx(1 - math.exp(-0.5))
        with pytest.raises(InvalidArgumentError):
            damping_probability(1.0, 0.0)

    def test_relative_improvement(self):
        """(acc_combined - acc_qnn) / acc_qnn, undefined for acc_qnn = 0."""
        assert relative_improvement(0.9, 0.75) == pytest.approx(0.2)
        with pytest.raises(InvalidArgumentError, match="undefined"):
            relative_improvement(0.5, 0.0)


class TestDensityMatrix:
    """Tests for the DensityMatrix type and single-gate evolution."""

    def test_trace_checked(self):
        """Entries must have unit trace."""
        with pytest.raises(InvalidArgumentError, match="trace"):
            DensityMatrix(1, np.eye(2))

    def test_hermitian_checked(self):
        """Entries must be Hermitian."""
        with pytest.raises(InvalidArgumentError, match="Hermitian"):
            DensityMatrix(1, np.array([[0.5, 0.3], [0.1, 0.5]]))

    def test_apply_channel_against_dense(self):
        """apply_channel on one qubit of three matches the lifted Kraus sum."""
        rng = np.random.default_rng(0)
        psi = rng.normal(size=8) + 1j * rng.normal(size=8)
        rho = DensityMatrix.from_state(StateVector.from_amplitudes(psi))
        kraus = amplitude_damping_kraus(0.3)

        out = apply_channel(rho, 1, kraus)

        assert np.allclose(out.entries, dense_kraus(rho.entries, 3, 1, kraus), atol=1e-12)

    def test_noiseless_gate(self):
        """Without noise a gate maps |0><0| to U|0><0|U^dag."""
        out = apply_gate_noisy(DensityMatrix.zero(1), Gate(PAULI_X, target=0), NoiseParams())

        assert np.allclose(out.probabilities(), [0.0, 1.0])

    def test_damped_gate(self):
        """X followed by damping leaves gamma in |0>."""
        out = apply_gate_noisy(
            DensityMatrix.zero(1), Gate(PAULI_X, target=0), NoiseParams(gamma=0.25)
        )

        assert np.allclose(out.probabilities(), [0.25, 0.75])

    def test_batched_gate_rejected(self):
        """apply_gate_noisy takes unbatched gates only."""
        gate = Gate(np.stack([PAULI_X, PAULI_X]), target=0)

        with pytest.raises(InvalidArgumentError, match="unbatched"):
            apply_gate_noisy(DensityMatrix.zero(1), gate, NoiseParams())


class TestNoisyQnn:
    """Tests for noisy QNN evaluation."""

    def test_noiseless_matches_statevector(self):
        """With tau = 0 the density simulation reproduces the pure-state readout."""
        for n in (1, 2, 3):
            params = _params(n, 3, seed=n)
            X = _points(10, seed=n)

            noisy = noisy_qnn_probs(params, X, tau_noise(0.0))
            pure = first_qubit_zero_probs(params, X)

            assert np.max(np.abs(noisy - pure)) <= 1e-10

    def test_against_dense_oracle(self):
        """Noisy evolution matches dense U rho U^dag plus lifted Kraus sums."""
        params = _params(2, 2, seed=10)
        x = np.array([0.3, -0.6])
        noise = NoiseParams(gamma=0.02, alpha=0.01)

        rho = evolve_density(qnn_circuit(params, x[None, :]), 2, 1, noise)[0]
        expected = dense_noisy_run(
            qnn_circuit(params, x),
            2,
            amplitude_damping_kraus(noise.gamma),
            phase_flip_kraus(noise.alpha),
        )

        assert np.allclose(rho, expected, atol=1e-12)

    def test_fidelity_non_increasing_over_tau_grid(self):
        """Stronger noise never brings S(x)^dag S(x) closer to |0...0>.

        The noiseless output of the circuit is |0...0>, so its all-zero
        probability is the fidelity to the noiseless output.
        """
        for seed in range(10):
            n = 1 + seed % 2
            spec = EqkSpec(kind=KernelKind.N_TO_N, n_qubits=n)
            params = _params(n, 3, seed=200 + seed)
            x = _points(1, seed=300 + seed)[0]

            fidelities = [
                noisy_kernel_value(spec, params, x, x, tau_noise(tau)) for tau in TAU_GRID
            ]

            assert fidelities[0] == pytest.approx(1.0, abs=1e-10)
            assert all(b <= a + 1e-12 for a, b in zip(fidelities, fidelities[1:]))

    def test_trace_preserved(self):
        """Noisy evolution keeps a valid density matrix."""
        params = _params(3, 3, seed=11)
        rho = evolve_density(qnn_circuit(params, _points(4, 12)), 3, 4, tau_noise(0.03))

        for matrix in rho:
            assert abs(np.trace(matrix) - 1.0) <= 1e-12
            DensityMatrix(3, matrix)

    def test_single_point_probability(self):
        """noisy_qnn_prob is the batched value for one input."""
        params = _params(2, 2, seed=13)
        X = _points(3, seed=14)
        noise = tau_noise(0.01)

        assert noisy_qnn_prob(params, X[1], noise) == pytest.approx(
            noisy_qnn_probs(params, X, noise)[1], abs=1e-14
        )

    def test_noiseless_accuracy(self):
        """noisy_accuracy at tau = 0 equals the statevector accuracy."""
        params = _params(1, 3, seed=15)
        data = (_points(40, 16), np.random.default_rng(17).choice([1, -1], size=40))

        assert noisy_accuracy(params, data, tau_noise(0.0)) == accuracy(params, data)

    def test_full_damping_forces_zero(self):
        """gamma = 1 resets every touched qubit, so qubit 0 reads |0>."""
        params = _params(1, 2, seed=18)

        probs = noisy_qnn_probs(params, _points(5, 19), NoiseParams(gamma=1.0))

        assert np.allclose(probs, 1.0)


class TestNoisyKernel:
    """Tests for noisy kernel values and Gram matrices."""

    @pytest.fixture
    def spec(self):
        return EqkSpec(kind=KernelKind.ONE_TO_N, n_qubits=2)

    def test_noiseless_kernel_value(self, spec):
        """At tau = 0 the noisy kernel equals the overlap kernel."""
        params = _params(1, 3, seed=20)
        xi, xj = [0.1, 0.9], [-0.4, 0.2]

        assert noisy_kernel_value(spec, params, xi, xj, NoiseParams()) == pytest.approx(
            kernel_value(spec, params, xi, xj), abs=1e-12
        )

    def test_noiseless_gram(self, spec):
        """At tau = 0 the noisy Gram equals the statevector Gram."""
        params = _params(1, 3, seed=21)
        X = _points(8, seed=22)

        noisy = noisy_gram_matrix(spec, params, X, NoiseParams()).entries
        pure = gram_matrix(spec, params, X).entries

        assert np.allclose(noisy, pure, atol=1e-10)

    def test_noisy_gram_symmetric(self, spec):
        """The symmetrized noisy Gram is symmetric with diagonal below 1."""
        params = _params(1, 3, seed=23)
        gram = noisy_gram_matrix(spec, params, _points(6, seed=24), tau_noise(0.03))

        assert np.array_equal(gram.entries, gram.entries.T)
        assert np.all(np.diag(gram.entries) < 1.0)
        assert np.all(np.diag(gram.entries) > 0.0)

    def test_noisy_cross_kernel(self, spec):
        """The cross kernel matches Gram rows and the noiseless limit."""
        params = _params(1, 2, seed=25)
        X = _points(5, seed=26)
        noise = tau_noise(0.01)

        rows = noisy_cross_kernel(spec, params, X[:2], X, noise)
        gram = noisy_gram_matrix(spec, params, X, noise).entries

        assert rows.shape == (2, 5)
        assert np.allclose(rows, gram[:2], atol=1e-12)
        assert np.allclose(
            noisy_cross_kernel(spec, params, X[:2], X, NoiseParams()),
            cross_kernel(spec, params, X[:2], X),
            atol=1e-10,
        )

    def test_threads_do_not_change_result(self, spec, monkeypatch):
        """Chunked multi-threaded pair evaluation gives the same Gram."""
        monkeypatch.setattr("src.noise.density.PAIR_CHUNK", 4)
        params = _params(1, 2, seed=27)
        X = _points(6, seed=28)
        noise = tau_noise(0.02)

        single = noisy_gram_matrix(spec, params, X, noise, threads=1).entries
        pooled = noisy_gram_matrix(spec, params, X, noise, threads=3).entries

        assert np.array_equal(single, pooled)
