"""Kernel construction registry.

Maps a KernelKind to the EmbeddingKernel implementing it so callers select
constructions from configuration at runtime.
"""

import logging
from functools import lru_cache
from typing import Any, Dict, List, Union

from src.kernel.base import EmbeddingKernel, KernelKind
from src.kernel.constructions import NToNKernel, OneToNKernel
from src.models.errors import InvalidArgumentError

logger = logging.getLogger(__name__)


class KernelRegistry:
    """Registry of EQK constructions."""

    def __init__(self):
        self._kernels: Dict[KernelKind, EmbeddingKernel] = {}
        self.register(NToNKernel())
        self.register(OneToNKernel())
        logger.debug(f"Initialized KernelRegistry with {self.list_kinds()}")

    def register(self, kernel: EmbeddingKernel) -> None:
        """Register a construction, replacing any with the same kind.

        Args:
            kernel: Construction instance
        """
        if kernel.kind in self._kernels:
            logger.warning(f"Overwriting existing kernel construction: {kernel.kind.value}")
        self._kernels[kernel.kind] = kernel

    def get(self, kind: Union[KernelKind, str]) -> EmbeddingKernel:
        """Get a construction by kind.

        Args:
            kind: KernelKind or its string value

        Returns:
            Construction instance

        Raises:
            InvalidArgumentError: If the kind is unknown or not registered
        """
        try:
            key = KernelKind(kind)
        except ValueError:
            key = None
        if key is None or key not in self._kernels:
            raise InvalidArgumentError(
                f"Kernel construction '{kind}' not registered. "
                f"Available: {self.list_kinds()}"
            )
        return self._kernels[key]

    def list_kinds(self) -> List[str]:
        """List registered construction kinds.

        Returns:
            Kind identifiers
        """
        return [kind.value for kind in self._kernels]

    def get_all_info(self) -> Dict[str, Dict[str, Any]]:
        """Describe every registered construction.

        Returns:
            Mapping of kind to construction info
        """
        return {kind.value: kernel.get_info() for kind, kernel in self._kernels.items()}


@lru_cache()
def get_kernel_registry() -> KernelRegistry:
    """Get the shared registry instance."""
    return KernelRegistry()
