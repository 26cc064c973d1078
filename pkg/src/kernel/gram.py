"""Kernel values, Gram matrices and cross-kernels of an EQK.

The kernel is k(xi, xj) = |<phi(xi)|phi(xj)>|^2 with |phi(x)> = S(x)|0...0>.
Gram matrices are computed from a batch of feature states: the states of
all points are simulated once (in chunks, optionally on several threads)
and the overlaps follow from one matrix product.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Sequence

import numpy as np

from src.kernel.base import EqkSpec, KernelMatrix
from src.kernel.registry import get_kernel_registry
from src.models.errors import InvalidArgumentError
from src.qnn.model import QnnParams, check_features
from src.simulator import (
    StateVector,
    adjoint_circuit,
    inner_product,
    prob_all_zero,
    run_circuit,
)
from src.simulator.operations import evolve_batch, to_flat

logger = logging.getLogger(__name__)

FEATURE_CHUNK = 256


def _single(x: Sequence[float]) -> np.ndarray:
    x = check_features(x)
    if x.ndim != 1:
        raise InvalidArgumentError("Expected a single 2-vector")
    return x


def _points(X: np.ndarray) -> np.ndarray:
    X = check_features(np.asarray(X, dtype=float).reshape(-1, 2))
    if X.shape[0] == 0:
        raise InvalidArgumentError("Point set must not be empty")
    return X


def _chunk_states(spec: EqkSpec, params: QnnParams, X: np.ndarray) -> np.ndarray:
    gates = get_kernel_registry().get(spec.kind).feature_gates(spec, params, X)
    return to_flat(evolve_batch(gates, spec.n_qubits, X.shape[0]))


def feature_states(
    spec: EqkSpec, params: QnnParams, X: np.ndarray, threads: int = 1
) -> np.ndarray:
    """Feature states of a batch of points.

    Args:
        spec: Kernel specification
        params: Trained QNN parameters
        X: (M, 2) points
        threads: Worker threads for independent chunks

    Returns:
        (M, 2**n) amplitudes, row i being |phi(X[i])>

    Raises:
        InvalidArgumentError: If X is empty or malformed
        PreconditionError: If spec and params do not fit the construction
    """
    X = _points(X)
    get_kernel_registry().get(spec.kind).check(spec, params)
    chunks = [X[i : i + FEATURE_CHUNK] for i in range(0, X.shape[0], FEATURE_CHUNK)]
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts: List[np.ndarray] = list(
                pool.map(lambda chunk: _chunk_states(spec, params, chunk), chunks)
            )
    else:
        parts = [_chunk_states(spec, params, chunk) for chunk in chunks]
    return np.concatenate(parts, axis=0)


def eqk_feature_state(
    spec: EqkSpec, params: QnnParams, x: Sequence[float]
) -> StateVector:
    """Feature state |phi(x)> of one point.

    Raises:
        PreconditionError: On a spec/params width mismatch
    """
    x = _single(x)
    return StateVector(spec.n_qubits, feature_states(spec, params, x[None, :])[0])


def kernel_value(
    spec: EqkSpec, params: QnnParams, xi: Sequence[float], xj: Sequence[float]
) -> float:
    """k(xi, xj) = |<phi(xi)|phi(xj)>|^2 from the two feature states."""
    overlap = inner_product(
        eqk_feature_state(spec, params, xi), eqk_feature_state(spec, params, xj)
    )
    return float(abs(overlap) ** 2)


def kernel_value_circuit(
    spec: EqkSpec, params: QnnParams, xi: Sequence[float], xj: Sequence[float]
) -> float:
    """k(xi, xj) as the all-zero probability of the circuit S(xi)^dag S(xj)."""
    construction = get_kernel_registry().get(spec.kind)
    s_j = construction.feature_gates(spec, params, _single(xj))
    s_i = construction.feature_gates(spec, params, _single(xi))
    state = run_circuit(s_j + adjoint_circuit(s_i), spec.n_qubits)
    return prob_all_zero(state)


def gram_matrix(
    spec: EqkSpec, params: QnnParams, X: np.ndarray, threads: int = 1
) -> KernelMatrix:
    """Gram matrix over a point set.

    The upper triangle is computed and mirrored; the diagonal is exactly 1.

    Args:
        spec: Kernel specification
        params: Trained QNN parameters
        X: (M, 2) points
        threads: Worker threads for feature-state chunks

    Returns:
        KernelMatrix of size M

    Raises:
        InvalidArgumentError: If X is empty
    """
    start = time.time()
    states = feature_states(spec, params, X, threads=threads)
    overlaps = np.abs(states.conj() @ states.T) ** 2
    upper = np.triu(overlaps, k=1)
    entries = upper + upper.T
    np.fill_diagonal(entries, 1.0)
    logger.info(
        f"Gram matrix {spec.label} M={entries.shape[0]} in {time.time() - start:.2f}s"
    )
    return KernelMatrix(entries)


def cross_kernel(
    spec: EqkSpec,
    params: QnnParams,
    rows: np.ndarray,
    cols: np.ndarray,
    threads: int = 1,
) -> np.ndarray:
    """Kernel values between two point sets.

    Args:
        spec: Kernel specification
        params: Trained QNN parameters
        rows: (R, 2) points, e.g. a test set
        cols: (C, 2) points, e.g. the training set

    Returns:
        (R, C) array with entry [r, c] = k(rows[r], cols[c])
    """
    left = feature_states(spec, params, rows, threads=threads)
    right = feature_states(spec, params, cols, threads=threads)
    return np.abs(left.conj() @ right.T) ** 2
