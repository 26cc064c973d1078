"""Experiment configuration and its flat key-value file format.

A config file holds one experiment. Each non-blank line is

    section.key = value

with '#' starting a comment. List values are comma-separated and booleans
are written true/false. Sections: dataset, model, train, kernel, noise,
sweep. Missing keys take the defaults below; unknown keys are rejected.
"""

import logging
import typing
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.config.settings import get_settings
from src.kernel.base import KernelKind
from src.models.errors import ConfigError
from src.noise.channels import TAU_GRID
from src.simulator import EntanglerKind

logger = logging.getLogger(__name__)


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class DatasetSection(_Section):
    """Dataset generation and split."""

    name: Literal["sinus", "corners", "spiral", "circles"] = "corners"
    total_points: int = Field(default=1000, ge=2)
    seed: int = Field(default=0, ge=0)
    n_train: int = Field(default=500, ge=1)
    n_test: int = Field(default=500, ge=1)

    @model_validator(mode="after")
    def _check_split(self) -> "DatasetSection":
        if self.n_train + self.n_test > self.total_points:
            raise ValueError(
                f"n_train + n_test = {self.n_train + self.n_test} exceeds "
                f"total_points = {self.total_points}"
            )
        return self


class ModelSection(_Section):
    """QNN depth and qubit range.

    n, when set, replaces the 1 ... n_max scan by a single qubit count.
    """

    layers: int = Field(default=7, ge=1)
    n_max: int = Field(default=8, ge=1)
    n: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check_width(self) -> "ModelSection":
        if self.n_max > self.layers + 1:
            raise ValueError(
                f"n_max = {self.n_max} exceeds layers + 1 = {self.layers + 1}"
            )
        if self.n is not None and self.n > self.layers + 1:
            raise ValueError(f"n = {self.n} exceeds layers + 1 = {self.layers + 1}")
        return self


class TrainSection(_Section):
    """Adam hyperparameters of the iterative training."""

    lr_first: float = Field(default=0.05, gt=0)
    epochs_first: int = Field(default=30, ge=1)
    lr_rest: float = Field(default=0.005, gt=0)
    epochs_rest: int = Field(default=10, ge=1)
    batch_size: int = Field(default=24, ge=1)
    init_seed: int = Field(default=0, ge=0)


class KernelSection(_Section):
    """EQK construction and SVM settings."""

    construction: KernelKind = KernelKind.N_TO_N
    entangler: EntanglerKind = EntanglerKind.CNOT_CASCADE
    svm_c: float = Field(default_factory=lambda: get_settings().svm_c, gt=0)
    svm_tol: float = Field(default_factory=lambda: get_settings().svm_tol, gt=0)


class NoiseSection(_Section):
    """Noise sweep grid and the short training used for it."""

    enabled: bool = False
    taus: List[float] = Field(default_factory=lambda: list(TAU_GRID))
    layers: List[int] = Field(default_factory=lambda: list(range(1, 11)))
    epochs: int = Field(default=2, ge=1)
    learning_rate: float = Field(default=0.05, gt=0)

    @model_validator(mode="after")
    def _check_grid(self) -> "NoiseSection":
        if any(not 0.0 <= tau <= 1.0 for tau in self.taus):
            raise ValueError(f"taus must lie in [0, 1], got {self.taus}")
        if any(layers < 1 for layers in self.layers):
            raise ValueError(f"layers must be positive, got {self.layers}")
        return self


class SweepSection(_Section):
    """Layer grid of the 2-qubit layer sweep."""

    layers: List[int] = Field(default_factory=lambda: [5, 6, 7, 8])

    @model_validator(mode="after")
    def _check_layers(self) -> "SweepSection":
        if any(layers < 1 for layers in self.layers):
            raise ValueError(f"layers must be positive, got {self.layers}")
        return self


class ExperimentConfig(_Section):
    """Complete experiment description."""

    dataset: DatasetSection = Field(default_factory=DatasetSection)
    model: ModelSection = Field(default_factory=ModelSection)
    train: TrainSection = Field(default_factory=TrainSection)
    kernel: KernelSection = Field(default_factory=KernelSection)
    noise: NoiseSection = Field(default_factory=NoiseSection)
    sweep: SweepSection = Field(default_factory=SweepSection)

    @model_validator(mode="after")
    def _check_construction(self) -> "ExperimentConfig":
        if self.kernel.construction == KernelKind.ONE_TO_N:
            if self.model.n is not None and self.model.n < 2:
                raise ValueError("one_to_n needs model.n >= 2")
            if self.model.n is None and self.model.n_max < 2:
                raise ValueError("one_to_n needs model.n_max >= 2")
        return self

    def qubit_counts(self) -> List[int]:
        """Qubit counts the experiment evaluates."""
        if self.model.n is not None:
            return [self.model.n]
        first = 2 if self.kernel.construction == KernelKind.ONE_TO_N else 1
        return list(range(first, self.model.n_max + 1))


def _is_list_field(section: str, key: str) -> bool:
    section_model = ExperimentConfig.model_fields[section].annotation
    field = section_model.model_fields.get(key)
    return field is not None and typing.get_origin(field.annotation) in (list, List)


def _error_fields(error: ValidationError) -> List[str]:
    fields = []
    for item in error.errors():
        path = ".".join(str(part) for part in item["loc"])
        fields.append(path or "config")
    return fields


def build_experiment_config(values: Dict[str, Dict[str, Any]]) -> ExperimentConfig:
    """Validate a nested {section: {key: value}} mapping.

    Raises:
        ConfigError: Listing every invalid field as section.key
    """
    try:
        return ExperimentConfig.model_validate(values)
    except ValidationError as e:
        fields = _error_fields(e)
        details = "; ".join(
            f"{'.'.join(str(p) for p in item['loc'])}: {item['msg']}"
            for item in e.errors()
        )
        raise ConfigError(f"Invalid experiment config: {details}", fields=fields)


def parse_experiment_config(text: str) -> ExperimentConfig:
    """Parse the flat section.key = value format.

    Raises:
        ConfigError: On a syntax error or invalid values
    """
    values: Dict[str, Dict[str, Any]] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"Line {number}: expected 'section.key = value'")
        name, value = (part.strip() for part in line.split("=", 1))
        if name.count(".") != 1:
            raise ConfigError(f"Line {number}: key '{name}' must be section.key")
        section, key = name.split(".")
        if section not in ExperimentConfig.model_fields:
            raise ConfigError(
                f"Line {number}: unknown section '{section}'", fields=[name]
            )
        if _is_list_field(section, key):
            parsed: Any = [item.strip() for item in value.split(",") if item.strip()]
        else:
            parsed = value
        values.setdefault(section, {})[key] = parsed
    return build_experiment_config(values)


def load_experiment_config(path: Union[str, Path]) -> ExperimentConfig:
    """Read and validate a config file.

    Raises:
        ConfigError: If the file cannot be read or is invalid
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}")
    cfg = parse_experiment_config(text)
    logger.info(f"Loaded experiment config from {path}")
    return cfg


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return ", ".join(_format_value(v) for v in value)
    if hasattr(value, "value"):
        return str(value.value)
    return str(value)


def dump_experiment_config(cfg: ExperimentConfig) -> str:
    """Render a config in the flat format (every key, defaults included)."""
    lines = []
    for section in ExperimentConfig.model_fields:
        for key, value in getattr(cfg, section).model_dump().items():
            if value is None:
                continue
            lines.append(f"{section}.{key} = {_format_value(value)}")
    return "\n".join(lines) + "\n"


def save_experiment_config(cfg: ExperimentConfig, path: Union[str, Path]) -> None:
    """Write a config file that load_experiment_config reads back."""
    Path(path).write_text(dump_experiment_config(cfg), encoding="utf-8")
