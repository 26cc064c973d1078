"""Dataset container and train/test splitting."""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from src.models.errors import InvalidArgumentError
from src.qnn.model import LABELS, DataPoint

logger = logging.getLogger(__name__)

DOMAIN_BOUND = 1.0


@dataclass(frozen=True, eq=False)
class Dataset:
    """Labelled 2-D points with their provenance.

    Args:
        name: Generator name (sinus, corners, spiral, circles) or a file stem
        seed: Seed the points were generated with
        X: (M, 2) features in [-1, 1]
        y: (M,) labels in {+1, -1}
    """

    name: str
    seed: int
    X: np.ndarray
    y: np.ndarray

    def __post_init__(self) -> None:
        X = np.asarray(self.X, dtype=float).reshape(-1, 2)
        y = np.asarray(self.y).astype(int)
        if y.shape != (X.shape[0],):
            raise InvalidArgumentError(
                f"Expected {X.shape[0]} labels, got shape {y.shape}"
            )
        if X.shape[0] == 0:
            raise InvalidArgumentError("A dataset needs at least one point")
        if not np.all(np.isfinite(X)) or np.any(np.abs(X) > DOMAIN_BOUND):
            raise InvalidArgumentError("Features must be finite and inside [-1, 1]")
        if not np.all(np.isin(y, LABELS)):
            raise InvalidArgumentError("Labels must be +1 or -1")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)

    def __len__(self) -> int:
        return self.X.shape[0]

    @property
    def points(self) -> List[DataPoint]:
        """The dataset as DataPoint values."""
        return [
            DataPoint(x=(float(a), float(b)), y=int(label))
            for (a, b), label in zip(self.X, self.y)
        ]

    def class_counts(self) -> Tuple[int, int]:
        """Number of +1 and -1 labels."""
        positives = int(np.sum(self.y == 1))
        return positives, len(self) - positives

    def subset(self, indices: np.ndarray) -> "Dataset":
        """Dataset restricted to the given indices (same name and seed)."""
        return Dataset(self.name, self.seed, self.X[indices], self.y[indices])


def split(
    dataset: Dataset, n_train: int, n_test: int, seed: int
) -> Tuple[Dataset, Dataset]:
    """Disjoint seeded random train/test split.

    Args:
        dataset: Points to split
        n_train: Training set size
        n_test: Test set size
        seed: Permutation seed

    Returns:
        Tuple of (train, test)

    Raises:
        InvalidArgumentError: If the dataset holds fewer than n_train + n_test
            points or a size is not positive
    """
    if n_train < 1 or n_test < 1:
        raise InvalidArgumentError(
            f"Split sizes must be positive, got {n_train} and {n_test}"
        )
    if n_train + n_test > len(dataset):
        raise InvalidArgumentError(
            f"Cannot split {len(dataset)} points into {n_train} + {n_test}"
        )
    order = np.random.default_rng(seed).permutation(len(dataset))
    train = dataset.subset(order[:n_train])
    test = dataset.subset(order[n_train : n_train + n_test])
    logger.debug(f"Split {dataset.name} into {n_train} train / {n_test} test points")
    return train, test
