"""Data re-uploading QNN: circuit, cost, gradient and training."""

from src.qnn.cost import (
    DECISION_THRESHOLD,
    accuracy,
    fidelity_cost,
    first_qubit_zero_probs,
    labels_from_probs,
    predict,
    predict_batch,
)
from src.qnn.gradient import cost_and_gradient, cost_gradient
from src.qnn.model import (
    DataPoint,
    QnnParams,
    as_arrays,
    encode_gate,
    qnn_circuit,
    qnn_state,
    qnn_states,
)
from src.qnn.optimizer import AdamOptimizer
from src.qnn.training import (
    FIRST_STAGE,
    LATER_STAGES,
    TrainConfig,
    expand_qubit,
    train_iterative,
    train_qnn,
)

__all__ = [
    "DECISION_THRESHOLD",
    "FIRST_STAGE",
    "LATER_STAGES",
    "AdamOptimizer",
    "DataPoint",
    "QnnParams",
    "TrainConfig",
    "accuracy",
    "as_arrays",
    "cost_and_gradient",
    "cost_gradient",
    "encode_gate",
    "expand_qubit",
    "fidelity_cost",
    "first_qubit_zero_probs",
    "labels_from_probs",
    "predict",
    "predict_batch",
    "qnn_circuit",
    "qnn_state",
    "qnn_states",
    "train_iterative",
    "train_qnn",
]
