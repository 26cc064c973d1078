"""Exact statevector simulation of the SU(2) / controlled-SU(2) gate set."""

from src.simulator.gates import (
    IDENTITY,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    EntanglerKind,
    Gate,
    Su2Angles,
    adjoint_circuit,
    entangler_gates,
    ry,
    rz,
    su2_derivatives,
    su2_matrix,
)
from src.simulator.statevector import (
    StateVector,
    apply_controlled,
    apply_entangler,
    apply_gate,
    apply_single,
    inner_product,
    prob_all_zero,
    prob_first_qubit_zero,
    run_circuit,
)

__all__ = [
    "IDENTITY",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "EntanglerKind",
    "Gate",
    "Su2Angles",
    "StateVector",
    "adjoint_circuit",
    "apply_controlled",
    "apply_entangler",
    "apply_gate",
    "apply_single",
    "entangler_gates",
    "inner_product",
    "prob_all_zero",
    "prob_first_qubit_zero",
    "run_circuit",
    "ry",
    "rz",
    "su2_derivatives",
    "su2_matrix",
]
