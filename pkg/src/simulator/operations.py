"""Batched tensor kernels behind the simulator.

States are held as arrays of shape (B, 2, ..., 2): a leading batch axis
followed by one axis of size 2 per qubit, qubit 0 first (the most
significant bit of the flat basis index). A gate matrix is either shared
by the whole batch (2, 2) or given per batch element (B, 2, 2).

Density matrices reuse the same kernels by treating the row and column
indices of an n-qubit operator as a 2n-qubit tensor.
"""

from typing import Optional, Sequence

import numpy as np

from src.simulator.gates import Gate


def to_tensor(amplitudes: np.ndarray, n_qubits: int) -> np.ndarray:
    """Reshape flat amplitudes (B, 2**n) or (2**n,) into batch tensor form."""
    amplitudes = np.asarray(amplitudes, dtype=complex)
    batch = amplitudes.shape[0] if amplitudes.ndim == 2 else 1
    return amplitudes.reshape((batch,) + (2,) * n_qubits)


def to_flat(tensor: np.ndarray) -> np.ndarray:
    """Reshape a batch tensor back to (B, 2**n)."""
    return tensor.reshape(tensor.shape[0], -1)


def apply_matrix(psi: np.ndarray, qubit: int, matrix: np.ndarray) -> np.ndarray:
    """Apply a 2x2 matrix to one qubit axis of a batch tensor.

    Args:
        psi: Tensor of shape (B, 2, ..., 2)
        qubit: Qubit index (axis qubit + 1)
        matrix: (2, 2) shared matrix or (B, 2, 2) per-element matrices

    Returns:
        New tensor of the same shape
    """
    axis = qubit + 1
    moved = np.moveaxis(psi, axis, -1)
    if matrix.ndim == 2:
        out = moved @ matrix.T
    else:
        shape = moved.shape
        flat = moved.reshape(shape[0], -1, 2)
        out = np.einsum("bkj,bij->bki", flat, matrix).reshape(shape)
    return np.moveaxis(out, -1, axis)


def apply_controlled_matrix(
    psi: np.ndarray,
    control: int,
    target: int,
    matrix: np.ndarray,
    project: bool = False,
) -> np.ndarray:
    """Apply a matrix to the target on the control = |1> subspace.

    Args:
        psi: Tensor of shape (B, 2, ..., 2)
        control: Control qubit index
        target: Target qubit index
        matrix: (2, 2) or (B, 2, 2) matrix for the target
        project: Zero the control = |0> subspace instead of leaving it
            unchanged (the derivative of a controlled gate)

    Returns:
        New tensor of the same shape
    """
    index = [slice(None)] * psi.ndim
    index[control + 1] = 1
    index = tuple(index)

    sub_target = target if target < control else target - 1
    updated = apply_matrix(psi[index], sub_target, matrix)

    out = np.zeros_like(psi) if project else psi.copy()
    out[index] = updated
    return out


def apply_gate_tensor(
    psi: np.ndarray,
    gate: Gate,
    matrix: Optional[np.ndarray] = None,
    offset: int = 0,
    project: bool = False,
) -> np.ndarray:
    """Apply a Gate (optionally with a replacement matrix) to a batch tensor.

    Args:
        psi: Batch tensor
        gate: Gate giving target/control placement
        matrix: Matrix to use instead of gate.matrix
        offset: Added to every qubit index (column side of a density matrix)
        project: See apply_controlled_matrix

    Returns:
        New tensor
    """
    m = gate.matrix if matrix is None else matrix
    if gate.control is None:
        return apply_matrix(psi, gate.target + offset, m)
    return apply_controlled_matrix(
        psi, gate.control + offset, gate.target + offset, m, project=project
    )


def zero_tensor(n_qubits: int, batch_size: int) -> np.ndarray:
    """Batch of |0...0> states."""
    psi = np.zeros((batch_size,) + (2,) * n_qubits, dtype=complex)
    psi[(slice(None),) + (0,) * n_qubits] = 1.0
    return psi


def evolve_batch(
    gates: Sequence[Gate],
    n_qubits: int,
    batch_size: int,
    initial: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Run a (possibly batched) gate list on a batch of states.

    Args:
        gates: Gates whose batched matrices have leading size batch_size
        n_qubits: Number of qubits
        batch_size: Number of states evolved together
        initial: Starting batch tensor; |0...0> for every element if None

    Returns:
        Final batch tensor of shape (batch_size, 2, ..., 2)
    """
    psi = zero_tensor(n_qubits, batch_size) if initial is None else initial
    for gate in gates:
        psi = apply_gate_tensor(psi, gate)
    return psi
