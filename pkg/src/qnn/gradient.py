"""Adjoint (reverse-mode) differentiation of the fidelity cost.

For a point with label projector M and output |psi> = U_K ... U_1 |0>,
the cost term is 1 - <psi|M|psi>. Walking the circuit backwards keeps
two states: |psi_{k-1}> = U_k^dag |psi_k> and the co-state
|lambda_k> = U_{k+1}^dag ... U_K^dag M |psi>. The derivative with respect
to an angle t of gate k is then

    d cost / dt = -2 Re <lambda_k| dU_k/dt |psi_{k-1}>.

Controlled gates CU = |0><0| (x) 1 + |1><1| (x) U differentiate to
|1><1| (x) dU, which is applied with the control=|0> block zeroed.
Parameter-shift is not used: controlled SU(2) generators have three
distinct eigenvalues, where the two-term shift rule does not hold.
"""

import logging
from typing import Tuple

import numpy as np

from src.qnn.model import DataLike, QnnParams, as_arrays, qnn_gate_slots
from src.simulator import su2_derivatives
from src.simulator.operations import apply_gate_tensor, evolve_batch, to_flat

logger = logging.getLogger(__name__)


def cost_and_gradient(params: QnnParams, batch: DataLike) -> Tuple[float, np.ndarray]:
    """Fidelity cost on a batch and its gradient as a flat vector.

    Args:
        params: QNN parameters
        batch: Labelled points

    Returns:
        Tuple of (cost, gradient in QnnParams.flatten order)

    Raises:
        InvalidArgumentError: If the batch is empty
    """
    X, y = as_arrays(batch)
    size = X.shape[0]
    n = params.n_qubits
    flat = params.flatten()

    slots = qnn_gate_slots(params, X)
    psi = evolve_batch([gate for gate, _ in slots], n, size)

    # lambda = M psi: keep only the label's half of qubit 0
    lam = psi.copy()
    plus = y == 1
    lam[plus, 1, ...] = 0.0
    lam[~plus, 0, ...] = 0.0
    p_correct = np.sum(np.abs(to_flat(lam)) ** 2, axis=1)
    cost = float(np.mean(1.0 - p_correct))

    gradient = np.zeros_like(flat)
    for gate, offset in reversed(slots):
        psi = apply_gate_tensor(psi, gate.dagger())
        if offset is not None:
            derivatives = su2_derivatives(flat[offset : offset + 3])
            for k, d_matrix in enumerate(derivatives):
                moved = apply_gate_tensor(psi, gate, matrix=d_matrix, project=True)
                overlap = np.sum(np.conj(lam) * moved)
                gradient[offset + k] = -2.0 * overlap.real / size
        lam = apply_gate_tensor(lam, gate.dagger())

    return cost, gradient


def cost_gradient(params: QnnParams, batch: DataLike) -> QnnParams:
    """Exact gradient of the fidelity cost restricted to a batch.

    Args:
        params: QNN parameters
        batch: Non-empty labelled batch

    Returns:
        Gradient with the same theta/phi layout as params

    Raises:
        InvalidArgumentError: If the batch is empty
    """
    _, gradient = cost_and_gradient(params, batch)
    return QnnParams.from_flat(params.n_qubits, params.layers, gradient)
