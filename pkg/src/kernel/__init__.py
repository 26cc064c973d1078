"""Embedding quantum kernels built from trained QNNs."""

from src.kernel.alignment import (
    combine_linear,
    combine_product,
    kernel_alignment,
    target_alignment,
    validate_kernel_matrix,
)
from src.kernel.base import EmbeddingKernel, EqkSpec, KernelKind, KernelMatrix
from src.kernel.constructions import NToNKernel, OneToNKernel
from src.kernel.gram import (
    cross_kernel,
    eqk_feature_state,
    feature_states,
    gram_matrix,
    kernel_value,
    kernel_value_circuit,
)
from src.kernel.registry import KernelRegistry, get_kernel_registry

__all__ = [
    "EmbeddingKernel",
    "EqkSpec",
    "KernelKind",
    "KernelMatrix",
    "KernelRegistry",
    "NToNKernel",
    "OneToNKernel",
    "combine_linear",
    "combine_product",
    "cross_kernel",
    "eqk_feature_state",
    "feature_states",
    "get_kernel_registry",
    "gram_matrix",
    "kernel_alignment",
    "kernel_value",
    "kernel_value_circuit",
    "target_alignment",
    "validate_kernel_matrix",
]
