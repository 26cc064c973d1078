"""The n-to-n and 1-to-n EQK constructions."""

import logging
from typing import Any, Dict, List

import numpy as np

from src.kernel.base import EmbeddingKernel, EqkSpec, KernelKind
from src.qnn.model import QnnParams, encode_matrices, qnn_circuit
from src.simulator import Gate, entangler_gates, su2_matrix

logger = logging.getLogger(__name__)


class NToNKernel(EmbeddingKernel):
    """Feature map equal to the full trained n-qubit QNN."""

    def __init__(self):
        super().__init__(KernelKind.N_TO_N)

    def check(self, spec: EqkSpec, params: QnnParams) -> None:
        self._require(
            spec.n_qubits == params.n_qubits,
            f"n_to_n needs spec width {spec.n_qubits} to equal the QNN width "
            f"{params.n_qubits}",
        )

    def feature_gates(
        self, spec: EqkSpec, params: QnnParams, X: np.ndarray
    ) -> List[Gate]:
        self.check(spec, params)
        return qnn_circuit(params, X)

    def get_info(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "name": "n-to-n",
            "description": "Trained n-qubit QNN used unchanged as the feature map",
        }


class OneToNKernel(EmbeddingKernel):
    """Single-qubit QNN replicated over n qubits with an entangler per layer.

    For l = 1 ... L - 1: U(x) on every qubit, U(theta_l) on every qubit,
    then the entangler cascade. A final U(x) layer closes the circuit. The
    trained angles of layer L are not used.
    """

    def __init__(self):
        super().__init__(KernelKind.ONE_TO_N)

    def check(self, spec: EqkSpec, params: QnnParams) -> None:
        self._require(
            params.n_qubits == 1,
            f"one_to_n needs a single-qubit QNN, got {params.n_qubits} qubits",
        )
        self._require(
            spec.n_qubits >= 2,
            f"one_to_n needs at least 2 qubits, got {spec.n_qubits}",
        )

    def feature_gates(
        self, spec: EqkSpec, params: QnnParams, X: np.ndarray
    ) -> List[Gate]:
        self.check(spec, params)
        n = spec.n_qubits
        encode = encode_matrices(np.asarray(X, dtype=float))
        trained = su2_matrix(params.theta[:, 0, :])
        entangler = entangler_gates(spec.entangler, n)

        gates: List[Gate] = []
        for layer in range(params.layers - 1):
            gates.extend(Gate(matrix=encode, target=q, name="Ux") for q in range(n))
            gates.extend(
                Gate(matrix=trained[layer], target=q, name="Utheta") for q in range(n)
            )
            gates.extend(entangler)
        gates.extend(Gate(matrix=encode, target=q, name="Ux") for q in range(n))
        return gates

    def get_info(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "name": "1-to-n",
            "description": (
                "Trained single-qubit layers replicated on n qubits with a "
                "CNOT or CZ cascade after each layer"
            ),
        }
