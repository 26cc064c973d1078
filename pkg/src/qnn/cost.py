"""Fidelity cost, decision rule and accuracy of the QNN.

Labels are read out on qubit 0: +1 corresponds to |0> and -1 to |1>, so
for n qubits the label projectors are |0><0| (x) 1 and |1><1| (x) 1.
"""

import logging
from typing import Sequence

import numpy as np

from src.qnn.model import DataLike, QnnParams, as_arrays, check_features, qnn_states

logger = logging.getLogger(__name__)

DECISION_THRESHOLD = 0.5


def first_qubit_zero_probs(params: QnnParams, X: np.ndarray) -> np.ndarray:
    """P(qubit 0 = |0>) of the QNN output for each input row."""
    amplitudes = qnn_states(params, np.asarray(X, dtype=float).reshape(-1, 2))
    half = amplitudes.shape[1] // 2
    return np.sum(np.abs(amplitudes[:, :half]) ** 2, axis=1)


def correct_label_probs(p_zero: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Probability of the correct label state given P(|0>) and labels."""
    return np.where(np.asarray(y) == 1, p_zero, 1.0 - p_zero)


def fidelity_cost(params: QnnParams, data: DataLike) -> float:
    """Mean of 1 - P_correct over the data points.

    Args:
        params: QNN parameters
        data: Labelled points

    Returns:
        Cost in [0, 1]

    Raises:
        InvalidArgumentError: If data is empty
    """
    X, y = as_arrays(data)
    p_correct = correct_label_probs(first_qubit_zero_probs(params, X), y)
    return float(np.mean(1.0 - p_correct))


def labels_from_probs(p_zero: np.ndarray) -> np.ndarray:
    """Decision rule: +1 iff P(|0>) >= 1/2."""
    return np.where(np.asarray(p_zero) >= DECISION_THRESHOLD, 1, -1)


def predict(params: QnnParams, x: Sequence[float]) -> int:
    """Predicted label of a single input."""
    x = check_features(x)
    return int(labels_from_probs(first_qubit_zero_probs(params, x))[0])


def predict_batch(params: QnnParams, X: np.ndarray) -> np.ndarray:
    """Predicted labels for an (M, 2) array of inputs."""
    return labels_from_probs(first_qubit_zero_probs(params, X))


def accuracy(params: QnnParams, data: DataLike) -> float:
    """Fraction of points whose predicted label matches the true label."""
    X, y = as_arrays(data)
    return float(np.mean(predict_batch(params, X) == y))
