"""Kernel alignment metrics, combinators and Gram-matrix validation."""

import logging
from typing import Dict, Sequence

import numpy as np

from src.kernel.base import KernelMatrix
from src.models.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

SYMMETRY_TOLERANCE = 1e-10
DIAGONAL_TOLERANCE = 1e-10
PSD_TOLERANCE = 1e-8


def _same_size(kernels: Sequence[KernelMatrix]) -> int:
    if not kernels:
        raise InvalidArgumentError("At least one kernel matrix is required")
    sizes = {k.size for k in kernels}
    if len(sizes) != 1:
        raise InvalidArgumentError(f"Kernel matrices differ in size: {sorted(sizes)}")
    return sizes.pop()


def kernel_alignment(ka: KernelMatrix, kb: KernelMatrix) -> float:
    """Alignment tr(Ka Kb) / sqrt(tr(Ka^2) tr(Kb^2)).

    For symmetric matrices the traces are Frobenius inner products.

    Raises:
        InvalidArgumentError: On a size mismatch or a zero matrix
    """
    _same_size([ka, kb])
    a, b = ka.entries, kb.entries
    norm_a = np.sum(a * a)
    norm_b = np.sum(b * b)
    if norm_a == 0 or norm_b == 0:
        raise InvalidArgumentError("Kernel alignment is undefined for a zero matrix")
    return float(np.sum(a * b.T) / np.sqrt(norm_a * norm_b))


def target_alignment(k: KernelMatrix, labels: Sequence[int]) -> float:
    """Alignment with the ideal kernel y y^T.

    TA = sum_ij y_i y_j k_ij / (M sqrt(sum_ij k_ij^2)).

    Raises:
        InvalidArgumentError: If the labels do not match the matrix size
    """
    y = np.asarray(labels, dtype=float)
    if y.shape != (k.size,):
        raise InvalidArgumentError(
            f"Expected {k.size} labels, got {y.shape[0] if y.ndim else 0}"
        )
    norm = np.sqrt(np.sum(k.entries**2))
    if norm == 0:
        raise InvalidArgumentError("Target alignment is undefined for a zero matrix")
    return float(y @ k.entries @ y / (k.size * norm))


def combine_linear(
    kernels: Sequence[KernelMatrix], weights: Sequence[float]
) -> KernelMatrix:
    """Weighted sum of kernel matrices.

    The diagonal is not renormalized, so weights that do not sum to 1 give
    a diagonal different from 1.

    Raises:
        InvalidArgumentError: On a size mismatch, a weight count mismatch or
            a negative weight
    """
    size = _same_size(kernels)
    w = np.asarray(weights, dtype=float)
    if w.shape != (len(kernels),):
        raise InvalidArgumentError(
            f"Expected {len(kernels)} weights, got {len(w)}"
        )
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise InvalidArgumentError(f"Weights must be nonnegative, got {w.tolist()}")
    total = np.zeros((size, size))
    for weight, kernel in zip(w, kernels):
        total += weight * kernel.entries
    return KernelMatrix(total)


def combine_product(kernels: Sequence[KernelMatrix]) -> KernelMatrix:
    """Entrywise (Hadamard) product of kernel matrices.

    Raises:
        InvalidArgumentError: On a size mismatch
    """
    size = _same_size(kernels)
    total = np.ones((size, size))
    for kernel in kernels:
        total *= kernel.entries
    return KernelMatrix(total)


def validate_kernel_matrix(k: KernelMatrix) -> Dict[str, bool]:
    """Check the Gram-matrix invariants.

    Returns:
        Dictionary with the boolean checks symmetric, positive_semidefinite,
        unit_diagonal and bounded_0_1
    """
    entries = k.entries
    checks = {
        "symmetric": bool(np.max(np.abs(entries - entries.T)) <= SYMMETRY_TOLERANCE),
        "positive_semidefinite": k.min_eigenvalue() >= -PSD_TOLERANCE,
        "unit_diagonal": bool(
            np.max(np.abs(np.diag(entries) - 1.0)) <= DIAGONAL_TOLERANCE
        ),
        "bounded_0_1": bool(
            np.all(entries >= -SYMMETRY_TOLERANCE)
            and np.all(entries <= 1.0 + SYMMETRY_TOLERANCE)
        ),
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        logger.debug(f"Kernel matrix (M={k.size}) fails checks: {failed}")
    return checks
