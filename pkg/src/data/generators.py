"""Seeded generators for the four synthetic 2-D datasets.

All samplers draw from np.random.default_rng(seed). Sinus, corners and
circles sample uniformly on [-1, 1]^2 and label with a pure function of
the coordinates; spiral draws two mirrored noisy arms.
"""

import logging
from enum import Enum
from typing import Callable, Dict, Union

import numpy as np

from src.data.dataset import Dataset
from src.models.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

SINUS_AMPLITUDE = 0.8
CORNER_RADIUS = 0.75
CIRCLE_OUTER = float(np.sqrt(2.0 / np.pi))
CIRCLE_INNER = 0.5 * CIRCLE_OUTER
SPIRAL_GROWTH = 0.9
SPIRAL_TURNS = 3.0 * np.pi
SPIRAL_NOISE = 0.05

CORNERS = np.array([[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]])


class DatasetName(str, Enum):
    """Names of the built-in generators."""

    SINUS = "sinus"
    CORNERS = "corners"
    SPIRAL = "spiral"
    CIRCLES = "circles"


def sinus_labels(X: np.ndarray) -> np.ndarray:
    """-1 above the curve x2 = -0.8 sin(pi x1), +1 on or below it."""
    X = np.atleast_2d(X)
    curve = -SINUS_AMPLITUDE * np.sin(np.pi * X[:, 0])
    return np.where(X[:, 1] > curve, -1, 1)


def corners_labels(X: np.ndarray) -> np.ndarray:
    """-1 strictly within 0.75 of a corner (+-1, +-1), else +1."""
    X = np.atleast_2d(X)
    distances = np.linalg.norm(X[:, None, :] - CORNERS[None, :, :], axis=2)
    return np.where(np.min(distances, axis=1) < CORNER_RADIUS, -1, 1)


def circles_labels(X: np.ndarray) -> np.ndarray:
    """-1 inside the annulus 0.5 sqrt(2/pi) <= |x| <= sqrt(2/pi), else +1."""
    X = np.atleast_2d(X)
    radius = np.linalg.norm(X, axis=1)
    inside = (radius >= CIRCLE_INNER) & (radius <= CIRCLE_OUTER)
    return np.where(inside, -1, 1)


def _check_count(m: int) -> None:
    if m < 1:
        raise InvalidArgumentError(f"Dataset size must be at least 1, got {m}")


def _uniform(
    name: DatasetName, m: int, seed: int, rule: Callable[[np.ndarray], np.ndarray]
) -> Dataset:
    _check_count(m)
    rng = np.random.default_rng(seed)
    X = rng.uniform(-1.0, 1.0, size=(m, 2))
    return Dataset(name.value, seed, X, rule(X))


def gen_sinus(m: int, seed: int) -> Dataset:
    """Points split by the curve x2 = -0.8 sin(pi x1)."""
    return _uniform(DatasetName.SINUS, m, seed, sinus_labels)


def gen_corners(m: int, seed: int) -> Dataset:
    """Quarter discs of radius 0.75 at the four corners labelled -1."""
    return _uniform(DatasetName.CORNERS, m, seed, corners_labels)


def gen_circles(m: int, seed: int) -> Dataset:
    """Annulus between 0.5 sqrt(2/pi) and sqrt(2/pi) labelled -1."""
    return _uniform(DatasetName.CIRCLES, m, seed, circles_labels)


def spiral_arm(t: np.ndarray, label: int) -> np.ndarray:
    """Noise-free spiral point(s) at parameter t for a class.

    The +1 arm is r (cos t, sin t) with r = 0.9 t / (3 pi); the -1 arm is
    its negation.
    """
    t = np.asarray(t, dtype=float)
    radius = SPIRAL_GROWTH * t / SPIRAL_TURNS
    points = np.stack([radius * np.cos(t), radius * np.sin(t)], axis=-1)
    return points if label == 1 else -points


def gen_spiral(m: int, seed: int) -> Dataset:
    """Two interleaved spirals, m // 2 points labelled +1 and the rest -1.

    Each point gets Gaussian noise (sigma 0.05) and is clipped to [-1, 1]^2.
    """
    _check_count(m)
    rng = np.random.default_rng(seed)
    n_plus = m // 2
    t = rng.uniform(0.0, SPIRAL_TURNS, size=m)
    y = np.where(np.arange(m) < n_plus, 1, -1)
    X = np.where(y[:, None] == 1, spiral_arm(t, 1), spiral_arm(t, -1))
    X = np.clip(X + rng.normal(0.0, SPIRAL_NOISE, size=(m, 2)), -1.0, 1.0)
    order = rng.permutation(m)
    return Dataset(DatasetName.SPIRAL.value, seed, X[order], y[order])


DATASET_GENERATORS: Dict[DatasetName, Callable[[int, int], Dataset]] = {
    DatasetName.SINUS: gen_sinus,
    DatasetName.CORNERS: gen_corners,
    DatasetName.SPIRAL: gen_spiral,
    DatasetName.CIRCLES: gen_circles,
}


def generate_dataset(name: Union[DatasetName, str], m: int, seed: int) -> Dataset:
    """Generate a dataset by name.

    Args:
        name: Generator name
        m: Number of points
        seed: Seed of the generator

    Returns:
        Generated dataset

    Raises:
        InvalidArgumentError: If the name is unknown or m < 1
    """
    try:
        key = DatasetName(name)
    except ValueError:
        raise InvalidArgumentError(
            f"Unknown dataset '{name}'. Available: {[d.value for d in DatasetName]}"
        )
    dataset = DATASET_GENERATORS[key](m, seed)
    positives, negatives = dataset.class_counts()
    logger.info(
        f"Generated {key.value} (m={m}, seed={seed}): {positives} positive, "
        f"{negatives} negative"
    )
    return dataset
