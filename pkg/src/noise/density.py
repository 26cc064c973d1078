"""Density-matrix simulation with noise after every gate.

An n-qubit density matrix is handled as a 2n-qubit batch tensor: axes
1 ... n index rows, axes n + 1 ... 2n index columns. A unitary U acts as
U on the row axes and conj(U) on the column axes, and a channel
{K_k} as sum_k K_k rho K_k^dag. After each gate the amplitude-damping
and then the phase-flip channel act on every qubit the gate touched.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from src.kernel import EqkSpec, KernelMatrix, get_kernel_registry
from src.models.errors import InvalidArgumentError
from src.noise.channels import (
    KrausPair,
    NoiseParams,
    amplitude_damping_kraus,
    phase_flip_kraus,
)
from src.qnn.cost import labels_from_probs
from src.qnn.model import DataLike, QnnParams, as_arrays, check_features, qnn_circuit
from src.simulator import Gate, StateVector, adjoint_circuit
from src.simulator.operations import apply_gate_tensor, apply_matrix

logger = logging.getLogger(__name__)

HERMITIAN_TOLERANCE = 1e-10
TRACE_TOLERANCE = 1e-10
PSD_TOLERANCE = 1e-8
PAIR_CHUNK = 2048


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Mixed n-qubit state.

    Args:
        n_qubits: Number of qubits
        entries: (2**n, 2**n) Hermitian, unit-trace, PSD matrix
    """

    n_qubits: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        dim = 2**self.n_qubits
        rho = np.asarray(self.entries, dtype=complex)
        if rho.shape != (dim, dim):
            raise InvalidArgumentError(
                f"Expected a {dim}x{dim} density matrix, got shape {rho.shape}"
            )
        if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOLERANCE:
            raise InvalidArgumentError("Density matrix is not Hermitian")
        if abs(np.trace(rho) - 1.0) > TRACE_TOLERANCE:
            raise InvalidArgumentError(f"Density matrix trace is {np.trace(rho).real}")
        if np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0] < -PSD_TOLERANCE:
            raise InvalidArgumentError("Density matrix is not positive semidefinite")
        object.__setattr__(self, "entries", rho)

    @classmethod
    def from_state(cls, state: StateVector) -> "DensityMatrix":
        """Pure-state density matrix |psi><psi|."""
        amps = state.amplitudes
        return cls(state.n_qubits, np.outer(amps, amps.conj()))

    @classmethod
    def zero(cls, n_qubits: int) -> "DensityMatrix":
        """|0...0><0...0|."""
        return cls.from_state(StateVector.zero(n_qubits))

    def tensor(self) -> np.ndarray:
        """Batch tensor of shape (1, 2, ..., 2) with 2n qubit axes."""
        return self.entries.reshape((1,) + (2,) * (2 * self.n_qubits))

    def probabilities(self) -> np.ndarray:
        """Computational-basis probabilities (the real diagonal)."""
        return np.real(np.diag(self.entries))


def _to_matrices(rho: np.ndarray, n_qubits: int) -> np.ndarray:
    dim = 2**n_qubits
    return rho.reshape(rho.shape[0], dim, dim)


def _channel_tensor(
    rho: np.ndarray, n_qubits: int, qubit: int, kraus: Sequence[np.ndarray]
) -> np.ndarray:
    out = np.zeros_like(rho)
    for k in kraus:
        out += apply_matrix(apply_matrix(rho, qubit, k), n_qubits + qubit, k.conj())
    return out


def _noisy_step(
    rho: np.ndarray,
    n_qubits: int,
    gate: Gate,
    damping: KrausPair,
    flip: KrausPair,
    noise: NoiseParams,
) -> np.ndarray:
    rho = apply_gate_tensor(rho, gate)
    rho = apply_gate_tensor(rho, gate, matrix=np.conj(gate.matrix), offset=n_qubits)
    for qubit in gate.qubits:
        if noise.gamma > 0:
            rho = _channel_tensor(rho, n_qubits, qubit, damping)
        if noise.alpha > 0:
            rho = _channel_tensor(rho, n_qubits, qubit, flip)
    return rho


def evolve_density(
    gates: Sequence[Gate], n_qubits: int, batch_size: int, noise: NoiseParams
) -> np.ndarray:
    """Run a (possibly batched) gate list with per-gate noise from |0...0>.

    Args:
        gates: Gates whose batched matrices have leading size batch_size
        n_qubits: Number of qubits
        batch_size: Number of density matrices evolved together
        noise: Channel strengths

    Returns:
        (batch_size, 2**n, 2**n) density matrices
    """
    rho = np.zeros((batch_size,) + (2,) * (2 * n_qubits), dtype=complex)
    rho[(slice(None),) + (0,) * (2 * n_qubits)] = 1.0
    damping = amplitude_damping_kraus(noise.gamma)
    flip = phase_flip_kraus(noise.alpha)
    for gate in gates:
        rho = _noisy_step(rho, n_qubits, gate, damping, flip, noise)
    return _to_matrices(rho, n_qubits)


def apply_channel(
    rho: DensityMatrix, qubit: int, kraus: Sequence[np.ndarray]
) -> DensityMatrix:
    """Apply a single-qubit Kraus channel to one qubit.

    Raises:
        InvalidArgumentError: If the qubit is out of range
    """
    if not 0 <= qubit < rho.n_qubits:
        raise InvalidArgumentError(
            f"qubit index {qubit} out of range for {rho.n_qubits} qubits"
        )
    out = _channel_tensor(rho.tensor(), rho.n_qubits, qubit, kraus)
    return DensityMatrix(rho.n_qubits, _to_matrices(out, rho.n_qubits)[0])


def apply_gate_noisy(
    rho: DensityMatrix, gate: Gate, noise: NoiseParams
) -> DensityMatrix:
    """U rho U^dag followed by damping then phase flip on the gate's qubits.

    Raises:
        InvalidArgumentError: If the gate is batched or its indices are invalid
    """
    if gate.is_batched:
        raise InvalidArgumentError("apply_gate_noisy expects an unbatched gate")
    for qubit in gate.qubits:
        if not 0 <= qubit < rho.n_qubits:
            raise InvalidArgumentError(
                f"qubit index {qubit} out of range for {rho.n_qubits} qubits"
            )
    if gate.control is not None and gate.control == gate.target:
        raise InvalidArgumentError("control and target must differ")
    out = _noisy_step(
        rho.tensor(),
        rho.n_qubits,
        gate,
        amplitude_damping_kraus(noise.gamma),
        phase_flip_kraus(noise.alpha),
        noise,
    )
    return DensityMatrix(rho.n_qubits, _to_matrices(out, rho.n_qubits)[0])


def noisy_qnn_probs(
    params: QnnParams, X: np.ndarray, noise: NoiseParams
) -> np.ndarray:
    """Noisy P(qubit 0 = |0>) of the QNN for each input row."""
    X = check_features(np.asarray(X, dtype=float).reshape(-1, 2))
    rho = evolve_density(qnn_circuit(params, X), params.n_qubits, X.shape[0], noise)
    diagonal = np.real(np.einsum("bii->bi", rho))
    return np.sum(diagonal[:, : diagonal.shape[1] // 2], axis=1)


def noisy_qnn_prob(params: QnnParams, x: Sequence[float], noise: NoiseParams) -> float:
    """tr(rho |0><0| (x) 1) after the noisy QNN circuit for one input."""
    x = check_features(x)
    if x.ndim != 1:
        raise InvalidArgumentError("noisy_qnn_prob takes a single 2-vector")
    return float(noisy_qnn_probs(params, x[None, :], noise)[0])


def noisy_accuracy(params: QnnParams, data: DataLike, noise: NoiseParams) -> float:
    """QNN accuracy when every gate is followed by the noise channels."""
    X, y = as_arrays(data)
    return float(np.mean(labels_from_probs(noisy_qnn_probs(params, X, noise)) == y))


def _raw_pairs(
    spec: EqkSpec,
    params: QnnParams,
    left: np.ndarray,
    right: np.ndarray,
    noise: NoiseParams,
) -> np.ndarray:
    # all-zero probability of S(left)^dag S(right) for each row pair
    construction = get_kernel_registry().get(spec.kind)
    gates = construction.feature_gates(spec, params, right) + adjoint_circuit(
        construction.feature_gates(spec, params, left)
    )
    rho = evolve_density(gates, spec.n_qubits, left.shape[0], noise)
    return np.real(rho[:, 0, 0])


def _raw_pairs_chunked(
    spec: EqkSpec,
    params: QnnParams,
    left: np.ndarray,
    right: np.ndarray,
    noise: NoiseParams,
    threads: int,
) -> np.ndarray:
    starts = list(range(0, left.shape[0], PAIR_CHUNK))

    def run(begin: int) -> np.ndarray:
        end = begin + PAIR_CHUNK
        return _raw_pairs(spec, params, left[begin:end], right[begin:end], noise)

    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts: List[np.ndarray] = list(pool.map(run, starts))
    else:
        parts = [run(begin) for begin in starts]
    return np.concatenate(parts) if parts else np.zeros(0)


def noisy_kernel_value(
    spec: EqkSpec,
    params: QnnParams,
    xi: Sequence[float],
    xj: Sequence[float],
    noise: NoiseParams,
) -> float:
    """Noisy kernel value, the mean of the (i, j) and (j, i) circuits."""
    xi, xj = check_features(xi), check_features(xj)
    if xi.ndim != 1 or xj.ndim != 1:
        raise InvalidArgumentError("noisy_kernel_value takes two single 2-vectors")
    get_kernel_registry().get(spec.kind).check(spec, params)
    left = np.stack([xi, xj])
    right = np.stack([xj, xi])
    return float(np.mean(_raw_pairs(spec, params, left, right, noise)))


def noisy_gram_matrix(
    spec: EqkSpec,
    params: QnnParams,
    X: np.ndarray,
    noise: NoiseParams,
    threads: int = 1,
) -> KernelMatrix:
    """Symmetrized noisy Gram matrix; the diagonal keeps its simulated value.

    Raises:
        InvalidArgumentError: If X is empty
    """
    X = check_features(np.asarray(X, dtype=float).reshape(-1, 2))
    size = X.shape[0]
    if size == 0:
        raise InvalidArgumentError("Point set must not be empty")
    get_kernel_registry().get(spec.kind).check(spec, params)

    rows, cols = np.triu_indices(size)
    forward = _raw_pairs_chunked(spec, params, X[rows], X[cols], noise, threads)
    backward = _raw_pairs_chunked(spec, params, X[cols], X[rows], noise, threads)
    entries = np.zeros((size, size))
    entries[rows, cols] = 0.5 * (forward + backward)
    entries[cols, rows] = entries[rows, cols]
    logger.info(
        f"Noisy Gram {spec.label} M={size} gamma={noise.gamma} alpha={noise.alpha}"
    )
    return KernelMatrix(entries)


def noisy_cross_kernel(
    spec: EqkSpec,
    params: QnnParams,
    rows: np.ndarray,
    cols: np.ndarray,
    noise: NoiseParams,
    threads: int = 1,
) -> np.ndarray:
    """Symmetrized noisy kernel values between two point sets, shape (R, C)."""
    rows = check_features(np.asarray(rows, dtype=float).reshape(-1, 2))
    cols = check_features(np.asarray(cols, dtype=float).reshape(-1, 2))
    if rows.shape[0] == 0 or cols.shape[0] == 0:
        raise InvalidArgumentError("Point sets must not be empty")
    get_kernel_registry().get(spec.kind).check(spec, params)

    r_index, c_index = np.meshgrid(
        np.arange(rows.shape[0]), np.arange(cols.shape[0]), indexing="ij"
    )
    left, right = rows[r_index.ravel()], cols[c_index.ravel()]
    forward = _raw_pairs_chunked(spec, params, left, right, noise, threads)
    backward = _raw_pairs_chunked(spec, params, right, left, noise, threads)
    return (0.5 * (forward + backward)).reshape(rows.shape[0], cols.shape[0])
