"""Artifact file formats and storage for the EQK toolkit."""

from src.storage.artifacts import (
    ArtifactStore,
    load_dataset_file,
    load_kernel_file,
    load_svm_file,
    save_dataset_file,
    save_kernel_file,
    save_svm_file,
)
from src.storage.formats import (
    read_dataset_csv,
    read_matrix,
    read_svm_record,
    write_dataset_csv,
    write_matrix,
    write_svm_record,
)

__all__ = [
    "ArtifactStore",
    "load_dataset_file",
    "load_kernel_file",
    "load_svm_file",
    "read_dataset_csv",
    "read_matrix",
    "read_svm_record",
    "save_dataset_file",
    "save_kernel_file",
    "save_svm_file",
    "write_dataset_csv",
    "write_matrix",
    "write_svm_record",
]
