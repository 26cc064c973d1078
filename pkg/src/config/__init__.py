"""Configuration module for the EQK toolkit."""

from src.config.experiment import (
    DatasetSection,
    ExperimentConfig,
    KernelSection,
    ModelSection,
    NoiseSection,
    SweepSection,
    TrainSection,
    build_experiment_config,
    dump_experiment_config,
    load_experiment_config,
    parse_experiment_config,
    save_experiment_config,
)
from src.config.settings import Settings, get_settings, setup_logging

__all__ = [
    "DatasetSection",
    "ExperimentConfig",
    "KernelSection",
    "ModelSection",
    "NoiseSection",
    "Settings",
    "SweepSection",
    "TrainSection",
    "build_experiment_config",
    "dump_experiment_config",
    "get_settings",
    "load_experiment_config",
    "parse_experiment_config",
    "save_experiment_config",
    "setup_logging",
]
