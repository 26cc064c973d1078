"""Soft-margin SVM on a precomputed kernel, trained by SMO.

The dual problem

    max  sum_i a_i - 1/2 sum_ij a_i a_j y_i y_j K_ij
    s.t. 0 <= a_i <= c,  sum_i a_i y_i = 0

is solved by pairwise updates in the y-scaled variables y_i a_i, which
live in [A_i, B_i] = [0, c] for y_i = +1 and [-c, 0] for y_i = -1. With
g_k = 1 - y_k sum_j a_j y_j K_kj the pair (i, j) is the maximal violating
pair

    i = argmax { y_i g_i : y_i a_i < B_i },  j = argmin { y_j g_j : A_j < y_j a_j }

and the solver stops once y_i g_i - y_j g_j <= tol. Ties pick the lowest
index.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from src.kernel.base import KernelMatrix
from src.models.errors import InvalidArgumentError, UnsupportedInputError

logger = logging.getLogger(__name__)

DEFAULT_C = 1.0
DEFAULT_TOL = 1e-5
PSD_TOLERANCE = 1e-8
MIN_CURVATURE = 1e-12
PASS_FACTOR = 10


@dataclass(eq=False)
class SvmModel:
    """Trained dual SVM.

    Args:
        alphas: Dual coefficients, one per training point
        bias: Offset b
        labels: Training labels (+1/-1)
        c: Box constraint
        warnings: Anomalies met during training
    """

    alphas: np.ndarray
    bias: float
    labels: np.ndarray
    c: float
    warnings: List[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.alphas = np.asarray(self.alphas, dtype=float)
        self.labels = np.asarray(self.labels, dtype=int)
        if self.alphas.shape != self.labels.shape or self.alphas.ndim != 1:
            raise InvalidArgumentError(
                f"alphas {self.alphas.shape} and labels {self.labels.shape} must match"
            )
        if self.c <= 0:
            raise InvalidArgumentError(f"c must be positive, got {self.c}")

    @property
    def size(self) -> int:
        """Number of training points M."""
        return self.alphas.shape[0]

    @property
    def support_indices(self) -> np.ndarray:
        """Indices with a positive dual coefficient."""
        return np.flatnonzero(self.alphas > 0)


def _check_labels(labels: Sequence[int], size: int) -> np.ndarray:
    y = np.asarray(labels)
    if y.shape != (size,):
        raise InvalidArgumentError(f"Expected {size} labels, got shape {y.shape}")
    if not np.all(np.isin(y, (1, -1))):
        raise InvalidArgumentError("Labels must be +1 or -1")
    return y.astype(int)


def _bias(
    y: np.ndarray,
    g: np.ndarray,
    scaled: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
) -> float:
    # free vectors satisfy b = y g exactly; otherwise b lies in [max_up, min_low]
    yg = y * g
    free = (scaled > lower) & (scaled < upper)
    if np.any(free):
        return float(np.mean(yg[free]))
    up = scaled < upper
    low = scaled > lower
    max_up = np.max(yg[up]) if np.any(up) else np.min(yg[low])
    min_low = np.min(yg[low]) if np.any(low) else np.max(yg[up])
    return float(0.5 * (max_up + min_low))


def svm_train(
    k: KernelMatrix,
    labels: Sequence[int],
    c: float = DEFAULT_C,
    tol: float = DEFAULT_TOL,
) -> SvmModel:
    """Solve the dual soft-margin problem by SMO.

    Args:
        k: Training kernel matrix
        labels: Training labels (+1/-1)
        c: Box constraint
        tol: KKT gap at which to stop

    Returns:
        Trained SvmModel (warnings lists any non-PSD or iteration-cap event)

    Raises:
        InvalidArgumentError: On a size mismatch or non-positive c / tol
        UnsupportedInputError: If only one class is present
    """
    if c <= 0 or tol <= 0:
        raise InvalidArgumentError(f"c and tol must be positive, got {c}, {tol}")
    size = k.size
    y = _check_labels(labels, size)
    if np.all(y == y[0]):
        raise UnsupportedInputError("SVM training needs both classes present")

    warnings: List[str] = []
    min_eig = k.min_eigenvalue()
    if min_eig < -PSD_TOLERANCE:
        message = f"Kernel matrix is not PSD (min eigenvalue {min_eig:.3e})"
        logger.warning(message)
        warnings.append(message)

    K = k.entries
    lower = np.where(y > 0, 0.0, -c)
    upper = np.where(y > 0, c, 0.0)
    scaled = np.zeros(size)
    g = np.ones(size)
    diag = np.diag(K)

    max_iterations = PASS_FACTOR * size * size
    start = time.time()
    iterations = 0
    converged = False
    while iterations < max_iterations:
        yg = y * g
        up = scaled < upper
        low = scaled > lower
        i = int(np.argmax(np.where(up, yg, -np.inf)))
        j = int(np.argmin(np.where(low, yg, np.inf)))
        gap = yg[i] - yg[j]
        if not (up[i] and low[j]) or gap <= tol:
            converged = True
            break

        curvature = max(diag[i] + diag[j] - 2.0 * K[i, j], MIN_CURVATURE)
        step = min(upper[i] - scaled[i], scaled[j] - lower[j], gap / curvature)
        g -= step * y * (K[i] - K[j])
        scaled[i] += step
        scaled[j] -= step
        iterations += 1

    if not converged:
        message = f"SMO reached the iteration cap ({max_iterations}) before tol={tol}"
        logger.warning(message)
        warnings.append(message)

    alphas = np.clip(y * scaled, 0.0, c)
    bias = _bias(y, g, scaled, lower, upper)
    logger.info(
        f"SMO finished M={size} in {iterations} iterations "
        f"({time.time() - start:.2f}s), {int(np.sum(alphas > 0))} support vectors"
    )
    return SvmModel(alphas=alphas, bias=bias, labels=y, c=c, warnings=warnings)


def decision_function(model: SvmModel, kernel_rows: np.ndarray) -> np.ndarray:
    """Decision values sum_i a_i y_i k(x_i, x) + b.

    Args:
        model: Trained model
        kernel_rows: (R, M) kernel values against the training points, or a
            single row of length M

    Returns:
        (R,) decision values

    Raises:
        InvalidArgumentError: If the rows do not have M columns
    """
    rows = np.atleast_2d(np.asarray(kernel_rows, dtype=float))
    if rows.ndim != 2 or rows.shape[1] != model.size:
        raise InvalidArgumentError(
            f"Kernel rows must have {model.size} columns, got shape {rows.shape}"
        )
    return rows @ (model.alphas * model.labels) + model.bias


def svm_predict_batch(model: SvmModel, kernel_rows: np.ndarray) -> np.ndarray:
    """Labels for several kernel rows; a zero decision value maps to +1."""
    return np.where(decision_function(model, kernel_rows) >= 0, 1, -1)


def svm_predict(model: SvmModel, kernel_row: Sequence[float]) -> int:
    """Label for one kernel row."""
    row = np.asarray(kernel_row, dtype=float)
    if row.ndim != 1:
        raise InvalidArgumentError("svm_predict takes a single kernel row")
    return int(svm_predict_batch(model, row)[0])


def dual_objective(model: SvmModel, k: KernelMatrix) -> float:
    """sum_i a_i - 1/2 sum_ij a_i a_j y_i y_j K_ij.

    Raises:
        InvalidArgumentError: If the model and kernel sizes differ
    """
    if k.size != model.size:
        raise InvalidArgumentError(
            f"Model has {model.size} points but the kernel has {k.size}"
        )
    ay = model.alphas * model.labels
    return float(np.sum(model.alphas) - 0.5 * ay @ k.entries @ ay)


def training_accuracy(model: SvmModel, k: KernelMatrix) -> Tuple[float, np.ndarray]:
    """Accuracy and predictions of the model on its own training kernel."""
    predictions = svm_predict_batch(model, k.entries)
    return float(np.mean(predictions == model.labels)), predictions
