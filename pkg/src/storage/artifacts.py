"""File-backed storage of experiment artifacts.

Every artifact kind has its own subdirectory under the storage root:

- datasets/<tag>.csv   points (x1,x2,y)
- params/<tag>.json    QNN parameters
- kernels/<tag>.txt    Gram matrices
- models/<tag>.txt     SVM records

A manifest.json at the root maps each stored tag to its file so a run can
be audited or reloaded later.
"""

import json
import logging
from pathlib import Path
from typing import Dict, Optional, Union

from src.config import get_settings
from src.data import Dataset
from src.kernel import KernelMatrix
from src.qnn import QnnParams
from src.storage.formats import (
    read_dataset_csv,
    read_matrix,
    read_svm_record,
    write_dataset_csv,
    write_matrix,
    write_svm_record,
)
from src.svm import SvmModel

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def save_dataset_file(path: PathLike, dataset: Dataset) -> None:
    """Write a dataset as CSV."""
    write_dataset_csv(path, dataset.X, dataset.y)


def load_dataset_file(
    path: PathLike, name: Optional[str] = None, seed: int = 0
) -> Dataset:
    """Read a dataset CSV; the name defaults to the file stem."""
    X, y = read_dataset_csv(path)
    return Dataset(name or Path(path).stem, seed, X, y)


def save_kernel_file(path: PathLike, kernel: KernelMatrix) -> None:
    """Write a kernel matrix in the plain-text matrix format."""
    write_matrix(path, kernel.entries)


def load_kernel_file(path: PathLike) -> KernelMatrix:
    """Read a kernel matrix file."""
    return KernelMatrix(read_matrix(path))


def save_svm_file(path: PathLike, model: SvmModel) -> None:
    """Write an SVM model record."""
    write_svm_record(path, model.alphas, model.labels, model.c, model.bias)


def load_svm_file(path: PathLike) -> SvmModel:
    """Read an SVM model record."""
    alphas, labels, c, bias = read_svm_record(path)
    return SvmModel(alphas=alphas, bias=bias, labels=labels, c=c)


class ArtifactStore:
    """Directory of datasets, parameters, kernels and SVM models."""

    def __init__(self, storage_dir: Optional[str] = None):
        """Initialize the store.

        Args:
            storage_dir: Root directory (settings.storage_dir if None)
        """
        settings = get_settings()
        self.storage_dir = Path(storage_dir or settings.storage_dir)
        self.dataset_dir = self.storage_dir / "datasets"
        self.params_dir = self.storage_dir / "params"
        self.kernel_dir = self.storage_dir / "kernels"
        self.model_dir = self.storage_dir / "models"

        for directory in (
            self.dataset_dir,
            self.params_dir,
            self.kernel_dir,
            self.model_dir,
        ):
            directory.mkdir(parents=True, exist_ok=True)

        self.manifest: Dict[str, str] = {}
        self._load_manifest()

        logger.info(f"Initialized ArtifactStore at {self.storage_dir}")

    @property
    def manifest_path(self) -> Path:
        """Location of manifest.json."""
        return self.storage_dir / "manifest.json"

    def _load_manifest(self) -> None:
        if self.manifest_path.exists():
            try:
                with open(self.manifest_path, "r", encoding="utf-8") as f:
                    self.manifest = json.load(f)
                logger.debug(f"Loaded manifest with {len(self.manifest)} entries")
            except (OSError, json.JSONDecodeError) as e:
                logger.error(f"Failed to load manifest: {e}")
                self.manifest = {}

    def _record(self, key: str, path: Path) -> Path:
        self.manifest[key] = str(path.relative_to(self.storage_dir))
        with open(self.manifest_path, "w", encoding="utf-8") as f:
            json.dump(self.manifest, f, indent=2, sort_keys=True)
        logger.debug(f"Stored {key} at {path}")
        return path

    def dataset_path(self, tag: str) -> Path:
        """Path of a stored dataset."""
        return self.dataset_dir / f"{tag}.csv"

    def params_path(self, tag: str) -> Path:
        """Path of stored QNN parameters."""
        return self.params_dir / f"{tag}.json"

    def kernel_path(self, tag: str) -> Path:
        """Path of a stored kernel matrix."""
        return self.kernel_dir / f"{tag}.txt"

    def model_path(self, tag: str) -> Path:
        """Path of a stored SVM model."""
        return self.model_dir / f"{tag}.txt"

    def save_dataset(self, tag: str, dataset: Dataset) -> Path:
        """Store a dataset under a tag."""
        path = self.dataset_path(tag)
        save_dataset_file(path, dataset)
        return self._record(f"dataset/{tag}", path)

    def load_dataset(
        self, tag: str, name: Optional[str] = None, seed: int = 0
    ) -> Dataset:
        """Load a stored dataset."""
        return load_dataset_file(self.dataset_path(tag), name=name or tag, seed=seed)

    def save_params(self, tag: str, params: QnnParams) -> Path:
        """Store QNN parameters under a tag."""
        path = self.params_path(tag)
        params.save(path)
        return self._record(f"params/{tag}", path)

    def load_params(self, tag: str) -> QnnParams:
        """Load stored QNN parameters."""
        return QnnParams.load(self.params_path(tag))

    def save_kernel(self, tag: str, kernel: KernelMatrix) -> Path:
        """Store a kernel matrix under a tag."""
        path = self.kernel_path(tag)
        save_kernel_file(path, kernel)
        return self._record(f"kernel/{tag}", path)

    def load_kernel(self, tag: str) -> KernelMatrix:
        """Load a stored kernel matrix."""
        return load_kernel_file(self.kernel_path(tag))

    def save_svm(self, tag: str, model: SvmModel) -> Path:
        """Store an SVM model under a tag."""
        path = self.model_path(tag)
        save_svm_file(path, model)
        return self._record(f"svm/{tag}", path)

    def load_svm(self, tag: str) -> SvmModel:
        """Load a stored SVM model."""
        return load_svm_file(self.model_path(tag))
