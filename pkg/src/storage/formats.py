"""Plain-text artifact formats.

- Kernel matrix: first line M, then M rows of M space-separated values.
- SVM model: lines M, c, b, then M lines "index alpha label".
- Dataset: CSV with header "x1,x2,y".

Floats are written with 17 significant digits so files read back to the
same doubles.
"""

import csv
import logging
from pathlib import Path
from typing import Tuple, Union

import numpy as np

from src.models.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
FLOAT_FORMAT = ".17g"
DATASET_HEADER = ("x1", "x2", "y")


def fmt(value: float) -> str:
    """Format a float with 17 significant digits."""
    return format(float(value), FLOAT_FORMAT)


def _read_lines(path: PathLike) -> list:
    with open(path, "r", encoding="utf-8") as f:
        return [line.strip() for line in f if line.strip()]


def write_matrix(path: PathLike, entries: np.ndarray) -> None:
    """Write a matrix in the kernel matrix format.

    A square matrix starts with a single size line M; a rectangular one
    (cross kernel) starts with "R C".
    """
    entries = np.atleast_2d(np.asarray(entries, dtype=float))
    n_rows, n_cols = entries.shape
    header = f"{n_rows}" if n_rows == n_cols else f"{n_rows} {n_cols}"
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"{header}\n")
        for row in entries:
            f.write(" ".join(fmt(v) for v in row) + "\n")
    logger.debug(f"Wrote {n_rows}x{n_cols} matrix to {path}")


def read_matrix(path: PathLike) -> np.ndarray:
    """Read a matrix written by write_matrix.

    Raises:
        InvalidArgumentError: If the file is malformed
    """
    lines = _read_lines(path)
    try:
        shape = [int(v) for v in lines[0].split()]
        n_rows, n_cols = shape if len(shape) == 2 else (shape[0], shape[0])
        rows = [[float(v) for v in line.split()] for line in lines[1:]]
        entries = np.array(rows, dtype=float).reshape(n_rows, n_cols)
    except (IndexError, ValueError) as e:
        raise InvalidArgumentError(f"Malformed matrix file {path}: {e}")
    return entries


def write_svm_record(
    path: PathLike, alphas: np.ndarray, labels: np.ndarray, c: float, bias: float
) -> None:
    """Write an SVM model record."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"{len(alphas)}\n{fmt(c)}\n{fmt(bias)}\n")
        for index, (alpha, label) in enumerate(zip(alphas, labels)):
            f.write(f"{index} {fmt(alpha)} {int(label)}\n")


def read_svm_record(path: PathLike) -> Tuple[np.ndarray, np.ndarray, float, float]:
    """Read an SVM record as (alphas, labels, c, bias).

    Raises:
        InvalidArgumentError: If the file is malformed
    """
    lines = _read_lines(path)
    try:
        size = int(lines[0])
        c, bias = float(lines[1]), float(lines[2])
        alphas = np.zeros(size)
        labels = np.zeros(size, dtype=int)
        for line in lines[3 : 3 + size]:
            index, alpha, label = line.split()
            alphas[int(index)] = float(alpha)
            labels[int(index)] = int(label)
    except (IndexError, ValueError) as e:
        raise InvalidArgumentError(f"Malformed SVM model file {path}: {e}")
    if len(lines) != 3 + size:
        raise InvalidArgumentError(f"SVM model file {path} should list {size} points")
    return alphas, labels, c, bias


def write_dataset_csv(path: PathLike, X: np.ndarray, y: np.ndarray) -> None:
    """Write points as CSV with header x1,x2,y."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(DATASET_HEADER)
        for (x1, x2), label in zip(X, y):
            writer.writerow([fmt(x1), fmt(x2), int(label)])


def read_dataset_csv(path: PathLike) -> Tuple[np.ndarray, np.ndarray]:
    """Read points written by write_dataset_csv.

    Raises:
        InvalidArgumentError: If the header or a row is malformed
    """
    with open(path, "r", encoding="utf-8", newline="") as f:
        rows = list(csv.reader(f))
    if not rows or tuple(rows[0]) != DATASET_HEADER:
        header = ",".join(DATASET_HEADER)
        raise InvalidArgumentError(f"{path} must start with header {header}")
    try:
        X = np.array([[float(r[0]), float(r[1])] for r in rows[1:]], dtype=float)
        y = np.array([int(r[2]) for r in rows[1:]], dtype=int)
    except (IndexError, ValueError) as e:
        raise InvalidArgumentError(f"Malformed dataset row in {path}: {e}")
    return X.reshape(-1, 2), y
