"""Exact statevector simulation.

StateVector wraps the 2**n complex amplitudes of a pure n-qubit state.
Every operation returns a new StateVector; nothing is mutated in place.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from src.models.errors import InvalidArgumentError
from src.simulator.gates import EntanglerKind, Gate, entangler_gates
from src.simulator.operations import apply_gate_tensor, to_flat, to_tensor

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-10
MAX_QUBITS = 12


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure n-qubit state.

    Args:
        n_qubits: Number of qubits
        amplitudes: 2**n_qubits complex amplitudes, qubit 0 most significant
    """

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise InvalidArgumentError(
                f"n_qubits must be in [1, {MAX_QUBITS}], got {self.n_qubits}"
            )
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape[0] != 2**self.n_qubits:
            raise InvalidArgumentError(
                f"Expected {2 ** self.n_qubits} amplitudes for {self.n_qubits} "
                f"qubits, got {amps.shape[0]}"
            )
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise InvalidArgumentError(f"State is not normalized (norm^2 = {norm})")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def zero(cls, n_qubits: int) -> "StateVector":
        """The |0...0> state."""
        amps = np.zeros(2**n_qubits, dtype=complex)
        amps[0] = 1.0
        return cls(n_qubits, amps)

    @classmethod
    def basis(cls, bits: Sequence[int]) -> "StateVector":
        """Computational basis state, bits[0] belonging to qubit 0."""
        n = len(bits)
        index = int("".join(str(int(b)) for b in bits), 2)
        amps = np.zeros(2**n, dtype=complex)
        amps[index] = 1.0
        return cls(n, amps)

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex]) -> "StateVector":
        """Build a state from unnormalized amplitudes."""
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        n = int(round(np.log2(amps.shape[0])))
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise InvalidArgumentError("Cannot normalize the zero vector")
        return cls(n, amps / norm)

    def tensor(self) -> np.ndarray:
        """Batch tensor view of shape (1, 2, ..., 2)."""
        return to_tensor(self.amplitudes, self.n_qubits)

    def norm(self) -> float:
        """Euclidean norm of the amplitudes."""
        return float(np.linalg.norm(self.amplitudes))


def _check_qubit(state: StateVector, qubit: int, role: str = "qubit") -> None:
    if not 0 <= qubit < state.n_qubits:
        raise InvalidArgumentError(
            f"{role} index {qubit} out of range for {state.n_qubits} qubits"
        )


def _check_matrix(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise InvalidArgumentError(f"Expected a 2x2 matrix, got shape {u.shape}")
    return u


def _from_tensor(tensor: np.ndarray, n_qubits: int) -> StateVector:
    return StateVector(n_qubits, to_flat(tensor)[0])


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply a Gate descriptor to a state.

    Args:
        state: Input state
        gate: Gate with an unbatched 2x2 matrix

    Returns:
        Evolved state

    Raises:
        InvalidArgumentError: If indices are invalid or the gate is batched
    """
    if gate.is_batched:
        raise InvalidArgumentError("apply_gate expects an unbatched gate")
    _check_qubit(state, gate.target, "target")
    if gate.control is not None:
        _check_qubit(state, gate.control, "control")
        if gate.control == gate.target:
            raise InvalidArgumentError("control and target must differ")
    return _from_tensor(apply_gate_tensor(state.tensor(), gate), state.n_qubits)


def apply_single(state: StateVector, qubit: int, u: np.ndarray) -> StateVector:
    """Apply a single-qubit unitary to one tensor factor.

    Args:
        state: Input state
        qubit: Qubit index (0 is the leftmost factor)
        u: 2x2 unitary

    Returns:
        Evolved state

    Raises:
        InvalidArgumentError: If the qubit is out of range
    """
    return apply_gate(state, Gate(matrix=_check_matrix(u), target=qubit))


def apply_controlled(
    state: StateVector, control: int, target: int, u: np.ndarray
) -> StateVector:
    """Apply u to the target conditioned on the control being |1>.

    Raises:
        InvalidArgumentError: If control == target or an index is out of range
    """
    return apply_gate(
        state, Gate(matrix=_check_matrix(u), target=target, control=control, name="CU")
    )


def apply_entangler(state: StateVector, kind: EntanglerKind) -> StateVector:
    """Apply the CNOT or CZ cascade with control s and target s + 1.

    Raises:
        InvalidArgumentError: If the state has fewer than two qubits
    """
    return run_circuit(entangler_gates(kind, state.n_qubits), state.n_qubits, state)


def run_circuit(
    gates: Sequence[Gate], n_qubits: int, initial: Optional[StateVector] = None
) -> StateVector:
    """Apply a gate list, starting from |0...0> unless a state is given."""
    state = initial if initial is not None else StateVector.zero(n_qubits)
    logger.debug(f"Running {len(gates)} gates on {n_qubits} qubits")
    for gate in gates:
        state = apply_gate(state, gate)
    return state


def inner_product(sa: StateVector, sb: StateVector) -> complex:
    """<sa|sb>, conjugate-linear in the first argument.

    Raises:
        InvalidArgumentError: If the states have different sizes
    """
    if sa.n_qubits != sb.n_qubits:
        raise InvalidArgumentError(
            f"Dimension mismatch: {sa.n_qubits} vs {sb.n_qubits} qubits"
        )
    return complex(np.vdot(sa.amplitudes, sb.amplitudes))


def prob_first_qubit_zero(state: StateVector) -> float:
    """Probability of measuring qubit 0 in |0>."""
    half = 2 ** (state.n_qubits - 1)
    return float(np.sum(np.abs(state.amplitudes[:half]) ** 2))


def prob_all_zero(state: StateVector) -> float:
    """Probability of measuring every qubit in |0>."""
    return float(abs(state.amplitudes[0]) ** 2)
