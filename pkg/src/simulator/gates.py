"""Gate definitions for the statevector simulator.

All trainable and encoding gates are generic SU(2) rotations in the
Euler form U(a, b, c) = Rz(c) Ry(b) Rz(a). Two-qubit gates are always
controlled single-qubit gates, so a Gate is a 2x2 matrix (or a batch of
them), a target qubit and an optional control qubit.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from src.models.errors import InvalidArgumentError

IDENTITY = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class EntanglerKind(str, Enum):
    """Two-qubit gate used in an entangler cascade."""

    CNOT_CASCADE = "cnot"
    CZ_CASCADE = "cz"


@dataclass(frozen=True)
class Su2Angles:
    """Euler angles of a generic SU(2) rotation.

    Args:
        a: Angle of the first Rz (radians)
        b: Angle of the Ry (radians)
        c: Angle of the last Rz (radians)
    """

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidArgumentError(
                    f"SU(2) angle '{name}' must be finite, got {getattr(self, name)}"
                )

    def as_tuple(self) -> Tuple[float, float, float]:
        """Return the angles as an (a, b, c) tuple."""
        return (self.a, self.b, self.c)


AngleLike = Union[Su2Angles, Sequence[float], np.ndarray]


def rz(t: float) -> np.ndarray:
    """Rotation about Z, diag(e^{-it/2}, e^{it/2})."""
    return np.array([[np.exp(-0.5j * t), 0], [0, np.exp(0.5j * t)]], dtype=complex)


def ry(t: float) -> np.ndarray:
    """Rotation about Y, [[cos t/2, -sin t/2], [sin t/2, cos t/2]]."""
    c, s = math.cos(t / 2), math.sin(t / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _angle_arrays(angles: AngleLike) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    if isinstance(angles, Su2Angles):
        return np.float64(angles.a), np.float64(angles.b), np.float64(angles.c)

    arr = np.asarray(angles, dtype=float)
    if arr.shape[-1:] != (3,):
        raise InvalidArgumentError(
            f"SU(2) angles need a trailing axis of size 3, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("SU(2) angles must be finite")
    return arr[..., 0], arr[..., 1], arr[..., 2]


def _compose(
    a: np.ndarray, b_cos: np.ndarray, b_sin: np.ndarray, c: np.ndarray
) -> np.ndarray:
    """Rz(c) M Rz(a) where M = [[b_cos, -b_sin], [b_sin, b_cos]]."""
    plus = np.exp(-0.5j * (a + c))
    minus = np.exp(0.5j * (a - c))
    out = np.empty(np.shape(a) + (2, 2), dtype=complex)
    out[..., 0, 0] = b_cos * plus
    out[..., 0, 1] = -b_sin * minus
    out[..., 1, 0] = b_sin * np.conj(minus)
    out[..., 1, 1] = b_cos * np.conj(plus)
    return out


def su2_matrix(angles: AngleLike) -> np.ndarray:
    """Build U(a, b, c) = Rz(c) Ry(b) Rz(a).

    Accepts a single Su2Angles / 3-vector, or an array of shape (..., 3),
    in which case a stack of matrices of shape (..., 2, 2) is returned.

    Args:
        angles: Euler angles

    Returns:
        Unitary matrix (or stack of matrices)

    Raises:
        InvalidArgumentError: If any angle is not finite
    """
    a, b, c = _angle_arrays(angles)
    return _compose(a, np.cos(b / 2), np.sin(b / 2), c)


def su2_derivatives(angles: AngleLike) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Partial derivatives of U(a, b, c) with respect to a, b and c.

    Args:
        angles: Euler angles (single or stacked, as in su2_matrix)

    Returns:
        Tuple (dU/da, dU/db, dU/dc)
    """
    a, b, c = _angle_arrays(angles)
    u = _compose(a, np.cos(b / 2), np.sin(b / 2), c)

    # dRz(t)/dt = -i/2 Z Rz(t); Z commutes with Rz
    d_a = u.copy()
    d_a[..., :, 0] *= -0.5j
    d_a[..., :, 1] *= 0.5j

    d_b = _compose(a, -0.5 * np.sin(b / 2), 0.5 * np.cos(b / 2), c)

    d_c = u.copy()
    d_c[..., 0, :] *= -0.5j
    d_c[..., 1, :] *= 0.5j
    return d_a, d_b, d_c


@dataclass(frozen=True, eq=False)
class Gate:
    """A single-qubit or controlled single-qubit gate.

    Args:
        matrix: 2x2 matrix, or a (B, 2, 2) stack applied per batch element
        target: Target qubit index
        control: Control qubit index for controlled gates
        name: Short label used in logs
    """

    matrix: np.ndarray
    target: int
    control: Optional[int] = None
    name: str = "U"

    @property
    def qubits(self) -> Tuple[int, ...]:
        """Qubits the gate acts on (control first)."""
        if self.control is None:
            return (self.target,)
        return (self.control, self.target)

    @property
    def is_batched(self) -> bool:
        """Whether the gate carries one matrix per batch element."""
        return self.matrix.ndim == 3

    def dagger(self) -> "Gate":
        """Return the inverse gate."""
        return Gate(
            matrix=np.conj(np.swapaxes(self.matrix, -1, -2)),
            target=self.target,
            control=self.control,
            name=f"{self.name}^dag",
        )


def entangler_gates(kind: EntanglerKind, n_qubits: int) -> List[Gate]:
    """Gates of the entangler cascade E on n qubits.

    Two-qubit gates act with control s and target s + 1 in ascending order.

    Args:
        kind: CNOT or CZ cascade
        n_qubits: Number of qubits

    Returns:
        Ordered gate list

    Raises:
        InvalidArgumentError: If fewer than two qubits are given
    """
    if n_qubits < 2:
        raise InvalidArgumentError(
            f"An entangler cascade needs at least 2 qubits, got {n_qubits}"
        )
    kind = EntanglerKind(kind)
    matrix = PAULI_X if kind == EntanglerKind.CNOT_CASCADE else PAULI_Z
    name = "CNOT" if kind == EntanglerKind.CNOT_CASCADE else "CZ"
    return [
        Gate(matrix=matrix, target=s + 1, control=s, name=name)
        for s in range(n_qubits - 1)
    ]


def adjoint_circuit(gates: Sequence[Gate]) -> List[Gate]:
    """Inverse of a gate list: reversed order, each gate conjugate-transposed."""
    return [gate.dagger() for gate in reversed(gates)]
