"""Data re-uploading QNN definition.

This module defines the data types of the model (DataPoint, QnnParams),
the encoding gate and the circuit of the n-qubit re-uploading network:
for every layer l, U(x) on every qubit, then U(theta_l^(r)) on each qubit
r, then controlled U(phi_l^(s)) with control s + 1 and target s.
"""

import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.models.errors import InvalidArgumentError
from src.simulator import Gate, StateVector, Su2Angles, su2_matrix
from src.simulator.operations import evolve_batch, to_flat

logger = logging.getLogger(__name__)

LABELS = (1, -1)


@dataclass(frozen=True)
class DataPoint:
    """Labelled 2-D sample.

    Args:
        x: Feature pair, expected in [-1, 1]
        y: Label, +1 or -1
    """

    x: Tuple[float, float]
    y: int

    def __post_init__(self) -> None:
        x = tuple(float(v) for v in self.x)
        if len(x) != 2 or not all(math.isfinite(v) for v in x):
            raise InvalidArgumentError(f"Features must be 2 finite reals, got {self.x}")
        if self.y not in LABELS:
            raise InvalidArgumentError(f"Label must be +1 or -1, got {self.y}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", int(self.y))


DataLike = Union[Sequence[DataPoint], Tuple[np.ndarray, np.ndarray], Any]


def as_arrays(data: DataLike) -> Tuple[np.ndarray, np.ndarray]:
    """Features (M, 2) and labels (M,) from any supported data container.

    Accepts a sequence of DataPoint, an (X, y) tuple of arrays, or any
    object exposing X and y arrays (such as Dataset).

    Raises:
        InvalidArgumentError: If the container is empty or malformed
    """
    if hasattr(data, "X") and hasattr(data, "y"):
        X, y = np.asarray(data.X, dtype=float), np.asarray(data.y, dtype=int)
    elif isinstance(data, tuple) and len(data) == 2 and isinstance(data[0], np.ndarray):
        X, y = np.asarray(data[0], dtype=float), np.asarray(data[1], dtype=int)
    else:
        points = list(data)
        if points and not isinstance(points[0], DataPoint):
            raise InvalidArgumentError(
                f"Unsupported data container element {type(points[0]).__name__}"
            )
        X = np.array([p.x for p in points], dtype=float).reshape(-1, 2)
        y = np.array([p.y for p in points], dtype=int)

    if X.shape[0] == 0:
        raise InvalidArgumentError("Data must not be empty")
    if X.ndim != 2 or X.shape[1] != 2 or y.shape != (X.shape[0],):
        raise InvalidArgumentError(
            f"Expected X of shape (M, 2) and y of shape (M,), got {X.shape} and {y.shape}"
        )
    bad = np.setdiff1d(y, (-1, 1))
    if bad.size:
        raise InvalidArgumentError(f"Labels must be +1 or -1, got {bad.tolist()}")
    return X, y


def check_features(x: Sequence[float]) -> np.ndarray:
    """Validate a single 2-vector or an (M, 2) feature array."""
    arr = np.asarray(x, dtype=float)
    if arr.shape[-1:] != (2,) or arr.ndim > 2:
        raise InvalidArgumentError(f"Features must be 2-vectors, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("Features must be finite")
    return arr


def encode_gate(x: Sequence[float]) -> Su2Angles:
    """Encoding gate angles for a 2-D input: (a, b, c) = (x[0], x[1], 0).

    Raises:
        InvalidArgumentError: If the input is not a finite 2-vector
    """
    arr = check_features(x)
    if arr.ndim != 1:
        raise InvalidArgumentError("encode_gate takes a single 2-vector")
    return Su2Angles(float(arr[0]), float(arr[1]), 0.0)


def encode_matrices(X: np.ndarray) -> np.ndarray:
    """Encoding unitaries for a batch of inputs, shape (M, 2, 2)."""
    X = check_features(X)
    angles = np.zeros(X.shape[:-1] + (3,))
    angles[..., :2] = X
    return su2_matrix(angles)


@dataclass(frozen=True, eq=False)
class QnnParams:
    """Trainable angles of an n-qubit, L-layer re-uploading QNN.

    Args:
        n_qubits: Number of qubits n
        layers: Number of layers L
        theta: Single-qubit angles, shape (L, n, 3)
        phi: Controlled-gate angles, shape (L, n - 1, 3)
    """

    n_qubits: int
    layers: int
    theta: np.ndarray
    phi: np.ndarray

    def __post_init__(self) -> None:
        if self.n_qubits < 1 or self.layers < 1:
            raise InvalidArgumentError(
                f"n_qubits and layers must be positive, got {self.n_qubits}, {self.layers}"
            )
        theta = np.asarray(self.theta, dtype=float)
        phi = np.asarray(self.phi, dtype=float)
        if phi.size == 0 and self.n_qubits == 1:
            phi = np.zeros((self.layers, 0, 3))
        if theta.shape != (self.layers, self.n_qubits, 3):
            raise InvalidArgumentError(
                f"theta must have shape {(self.layers, self.n_qubits, 3)}, got {theta.shape}"
            )
        if phi.shape != (self.layers, self.n_qubits - 1, 3):
            raise InvalidArgumentError(
                f"phi must have shape {(self.layers, self.n_qubits - 1, 3)}, got {phi.shape}"
            )
        if not (np.all(np.isfinite(theta)) and np.all(np.isfinite(phi))):
            raise InvalidArgumentError("QNN parameters must be finite")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def zeros(cls, n_qubits: int, layers: int) -> "QnnParams":
        """All-zero parameters (every trainable gate is the identity)."""
        return cls(
            n_qubits,
            layers,
            np.zeros((layers, n_qubits, 3)),
            np.zeros((layers, n_qubits - 1, 3)),
        )

    @classmethod
    def random(
        cls, n_qubits: int, layers: int, rng: np.random.Generator
    ) -> "QnnParams":
        """Angles drawn uniformly from [-pi, pi]."""
        theta = rng.uniform(-np.pi, np.pi, size=(layers, n_qubits, 3))
        phi = rng.uniform(-np.pi, np.pi, size=(layers, n_qubits - 1, 3))
        return cls(n_qubits, layers, theta, phi)

    @property
    def n_parameters(self) -> int:
        """Scalar parameter count, 3 (2n - 1) L."""
        return 3 * (2 * self.n_qubits - 1) * self.layers

    def flatten(self) -> np.ndarray:
        """theta followed by phi as one vector."""
        return np.concatenate([self.theta.ravel(), self.phi.ravel()])

    @classmethod
    def from_flat(cls, n_qubits: int, layers: int, vector: np.ndarray) -> "QnnParams":
        """Inverse of flatten."""
        vector = np.asarray(vector, dtype=float)
        split = layers * n_qubits * 3
        expected = 3 * (2 * n_qubits - 1) * layers
        if vector.shape != (expected,):
            raise InvalidArgumentError(
                f"Expected {expected} parameters, got shape {vector.shape}"
            )
        return cls(
            n_qubits,
            layers,
            vector[:split].reshape(layers, n_qubits, 3),
            vector[split:].reshape(layers, n_qubits - 1, 3),
        )

    def theta_offset(self, layer: int, qubit: int) -> int:
        """Position of theta[layer, qubit] in the flat vector."""
        return (layer * self.n_qubits + qubit) * 3

    def phi_offset(self, layer: int, link: int) -> int:
        """Position of phi[layer, link] in the flat vector."""
        start = self.layers * self.n_qubits * 3
        return start + (layer * (self.n_qubits - 1) + link) * 3

    def to_dict(self) -> Dict[str, Any]:
        """Convert to a JSON-serializable dictionary."""
        return {
            "n_qubits": self.n_qubits,
            "layers": self.layers,
            "theta": self.theta.tolist(),
            "phi": self.phi.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "QnnParams":
        """Build parameters from to_dict output."""
        n, layers = int(data["n_qubits"]), int(data["layers"])
        phi = np.asarray(data["phi"], dtype=float).reshape(layers, n - 1, 3)
        return cls(n, layers, np.asarray(data["theta"], dtype=float), phi)

    def save(self, path: Union[str, Path]) -> None:
        """Write parameters as JSON."""
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "QnnParams":
        """Read parameters written by save."""
        with open(path, "r", encoding="utf-8") as f:
            return cls.from_dict(json.load(f))


def qnn_gate_slots(
    params: QnnParams, X: np.ndarray
) -> List[Tuple[Gate, Optional[int]]]:
    """QNN gate list paired with the flat offset of each trainable gate.

    Encoding gates carry None. When X is a single 2-vector the encoding
    gates hold plain 2x2 matrices; for an (M, 2) array they hold a stack.

    Args:
        params: QNN parameters
        X: One input or a batch of inputs

    Returns:
        List of (gate, offset) pairs in application order
    """
    X = check_features(X)
    encode = encode_matrices(X)
    theta_u = su2_matrix(params.theta)
    phi_u = su2_matrix(params.phi) if params.n_qubits > 1 else None

    slots: List[Tuple[Gate, Optional[int]]] = []
    for layer in range(params.layers):
        for qubit in range(params.n_qubits):
            slots.append((Gate(matrix=encode, target=qubit, name="Ux"), None))
        for qubit in range(params.n_qubits):
            slots.append(
                (
                    Gate(matrix=theta_u[layer, qubit], target=qubit, name="Utheta"),
                    params.theta_offset(layer, qubit),
                )
            )
        for link in range(params.n_qubits - 1):
            slots.append(
                (
                    Gate(
                        matrix=phi_u[layer, link],
                        target=link,
                        control=link + 1,
                        name="CUphi",
                    ),
                    params.phi_offset(layer, link),
                )
            )
    return slots


def qnn_circuit(params: QnnParams, X: Sequence[float]) -> List[Gate]:
    """Gate list of the QNN for one input (or a batch of inputs)."""
    return [gate for gate, _ in qnn_gate_slots(params, np.asarray(X, dtype=float))]


def qnn_state(params: QnnParams, x: Sequence[float]) -> StateVector:
    """Output state QNN(x)|0...0>.

    Raises:
        InvalidArgumentError: If x is not a finite 2-vector
    """
    x = check_features(x)
    if x.ndim != 1:
        raise InvalidArgumentError("qnn_state takes a single 2-vector")
    amplitudes = qnn_states(params, x[None, :])[0]
    return StateVector(params.n_qubits, amplitudes)


def qnn_states(params: QnnParams, X: np.ndarray) -> np.ndarray:
    """Output amplitudes for a batch of inputs, shape (M, 2**n)."""
    X = check_features(X).reshape(-1, 2)
    gates = qnn_circuit(params, X)
    logger.debug(
        f"QNN n={params.n_qubits}, L={params.layers}: {len(gates)} gates "
        f"on a batch of {X.shape[0]}"
    )
    return to_flat(evolve_batch(gates, params.n_qubits, X.shape[0]))
