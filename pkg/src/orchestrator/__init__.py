"""Experiment orchestration and result files.

This module runs the QNN -> EQK -> SVM pipeline as timed stages and
writes the resulting accuracy tables.
"""

from src.orchestrator.orchestrator import (
    ExperimentOrchestrator,
    ExperimentRun,
    StageResult,
    run_seeds,
    seeded_config,
)
from src.orchestrator.results import (
    NOISE_SWEEP_COLUMNS,
    RESULT_COLUMNS,
    NoiseSweepRecord,
    ResultRow,
    emit_noise_sweep,
    emit_results,
    noise_sweep_records,
    read_noise_sweep,
    read_results,
)

__all__ = [
    "ExperimentOrchestrator",
    "ExperimentRun",
    "NOISE_SWEEP_COLUMNS",
    "NoiseSweepRecord",
    "RESULT_COLUMNS",
    "ResultRow",
    "StageResult",
    "emit_noise_sweep",
    "emit_results",
    "noise_sweep_records",
    "read_noise_sweep",
    "read_results",
    "run_seeds",
    "seeded_config",
]
