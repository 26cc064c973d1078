"""Synthetic 2-D datasets."""

from src.data.dataset import Dataset, split
from src.data.generators import (
    DATASET_GENERATORS,
    DatasetName,
    circles_labels,
    corners_labels,
    gen_circles,
    gen_corners,
    gen_sinus,
    gen_spiral,
    generate_dataset,
    sinus_labels,
    spiral_arm,
)

__all__ = [
    "DATASET_GENERATORS",
    "Dataset",
    "DatasetName",
    "circles_labels",
    "corners_labels",
    "gen_circles",
    "gen_corners",
    "gen_sinus",
    "gen_spiral",
    "generate_dataset",
    "sinus_labels",
    "spiral_arm",
    "split",
]
