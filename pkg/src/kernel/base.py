"""Base interface for embedding quantum kernel constructions.

A construction turns trained QNN parameters into a feature-map circuit
S(x). Every construction implements this interface so the Gram, noise and
orchestration code can use them interchangeably.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.errors import InvalidArgumentError, PreconditionError
from src.qnn.model import QnnParams
from src.simulator import EntanglerKind, Gate

logger = logging.getLogger(__name__)


class KernelKind(str, Enum):
    """Available EQK constructions."""

    N_TO_N = "n_to_n"
    ONE_TO_N = "one_to_n"


class EqkSpec(BaseModel):
    """Which EQK to build and on how many qubits.

    Args:
        kind: Construction
        n_qubits: Width of the feature-map circuit
        entangler: Entangler cascade (ONE_TO_N only)
    """

    kind: KernelKind
    n_qubits: int = Field(..., ge=1)
    entangler: EntanglerKind = EntanglerKind.CNOT_CASCADE

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_width(self) -> "EqkSpec":
        if self.kind == KernelKind.ONE_TO_N and self.n_qubits < 2:
            raise ValueError("one_to_n requires n_qubits >= 2")
        return self

    @property
    def label(self) -> str:
        """Short description, e.g. 'one_to_n[cnot] n=3'."""
        if self.kind == KernelKind.ONE_TO_N:
            return f"{self.kind.value}[{self.entangler.value}] n={self.n_qubits}"
        return f"{self.kind.value} n={self.n_qubits}"


@dataclass(eq=False)
class KernelMatrix:
    """Square matrix of kernel values.

    Only squareness and finiteness are enforced here; the Gram invariants
    (symmetry, unit diagonal, PSD) are checked by validate_kernel_matrix
    since combined and noisy kernels legitimately break some of them.

    Args:
        entries: (M, M) real array
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        entries = np.asarray(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise InvalidArgumentError(
                f"Kernel matrix must be square, got shape {entries.shape}"
            )
        if entries.shape[0] == 0:
            raise InvalidArgumentError("Kernel matrix must not be empty")
        if not np.all(np.isfinite(entries)):
            raise InvalidArgumentError("Kernel matrix entries must be finite")
        self.entries = entries

    @property
    def size(self) -> int:
        """Number of rows M."""
        return self.entries.shape[0]

    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue of the symmetric part."""
        sym = 0.5 * (self.entries + self.entries.T)
        return float(np.linalg.eigvalsh(sym)[0])


class EmbeddingKernel(ABC):
    """Abstract base class for EQK constructions."""

    def __init__(self, kind: KernelKind):
        """Initialize the construction.

        Args:
            kind: Construction identifier
        """
        self.kind = kind
        logger.debug(f"Initialized {self.__class__.__name__} ({kind.value})")

    @abstractmethod
    def check(self, spec: EqkSpec, params: QnnParams) -> None:
        """Verify that spec and params fit this construction.

        Raises:
            PreconditionError: If the widths do not match
        """

    @abstractmethod
    def feature_gates(
        self, spec: EqkSpec, params: QnnParams, X: np.ndarray
    ) -> List[Gate]:
        """Gate list of the feature map S(x).

        Args:
            spec: Kernel specification
            params: Trained QNN parameters
            X: One 2-vector, or an (M, 2) batch (encoding gates batched)

        Returns:
            Gates in application order
        """

    @abstractmethod
    def get_info(self) -> Dict[str, Any]:
        """Describe this construction.

        Returns:
            Dictionary with kind, name and description
        """

    def _require(self, condition: bool, message: str) -> None:
        if not condition:
            raise PreconditionError(message)
