"""Result rows and their CSV files."""

import csv
import logging
import math
from pathlib import Path
from typing import Any, Iterable, List, Sequence, Type, TypeVar, Union

from pydantic import BaseModel, Field

from src.models.errors import InvalidArgumentError
from src.noise.channels import relative_improvement
from src.storage.formats import fmt

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
Row = TypeVar("Row", bound=BaseModel)


class ResultRow(BaseModel):
    """Accuracies of one (dataset, construction, n, L, tau) evaluation.

    wall_time_seconds is the time elapsed since the experiment started when
    the row was completed.
    """

    dataset: str
    construction: str
    entangler: str
    n: int = Field(..., ge=1)
    L: int = Field(..., ge=1)
    tau: float = Field(default=0.0, ge=0.0, le=1.0)
    acc_qnn_train: float = Field(..., ge=0.0, le=1.0)
    acc_qnn_test: float = Field(..., ge=0.0, le=1.0)
    acc_eqk_train: float = Field(..., ge=0.0, le=1.0)
    acc_eqk_test: float = Field(..., ge=0.0, le=1.0)
    seed: int = Field(..., ge=0)
    wall_time_seconds: float = Field(default=0.0, ge=0.0)


class NoiseSweepRecord(BaseModel):
    """One (L, tau) cell of the noise sweep."""

    dataset: str
    L: int = Field(..., ge=1)
    tau: float = Field(..., ge=0.0, le=1.0)
    acc_qnn: float = Field(..., ge=0.0, le=1.0)
    acc_eqk: float = Field(..., ge=0.0, le=1.0)
    relative_improvement: float
    seed: int = Field(..., ge=0)


RESULT_COLUMNS = list(ResultRow.model_fields)
NOISE_SWEEP_COLUMNS = list(NoiseSweepRecord.model_fields)


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return fmt(value)
    return str(value)


def _write_csv(path: PathLike, columns: List[str], rows: Iterable[BaseModel]) -> int:
    path = Path(path)
    try:
        has_header = False
        if path.exists() and path.stat().st_size > 0:
            with open(path, "r", encoding="utf-8", newline="") as f:
                header = next(csv.reader(f), [])
            if header != columns:
                raise InvalidArgumentError(
                    f"{path} has header {header}, expected {columns}"
                )
            has_header = True

        count = 0
        with open(path, "a", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            if not has_header:
                writer.writerow(columns)
            for row in rows:
                values = row.model_dump()
                writer.writerow([_cell(values[column]) for column in columns])
                count += 1
    except OSError as e:
        logger.error(f"Failed to write results to {path}: {e}")
        raise OSError(f"Cannot write results to {path}: {e}") from e
    logger.info(f"Wrote {count} rows to {path}")
    return count


def _read_csv(path: PathLike, model: Type[Row], columns: List[str]) -> List[Row]:
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f)
            if reader.fieldnames != columns:
                raise InvalidArgumentError(
                    f"{path} has header {reader.fieldnames}, expected {columns}"
                )
            return [model.model_validate(record) for record in reader]
    except OSError as e:
        raise OSError(f"Cannot read results from {path}: {e}") from e


def emit_results(rows: Sequence[ResultRow], path: PathLike) -> int:
    """Append rows to a results CSV, writing the header for a new file.

    Args:
        rows: Rows to write
        path: CSV path

    Returns:
        Number of rows written

    Raises:
        InvalidArgumentError: If the file exists with a different header
        OSError: If the file cannot be written (message names the path)
    """
    return _write_csv(path, RESULT_COLUMNS, rows)


def read_results(path: PathLike) -> List[ResultRow]:
    """Parse a results CSV written by emit_results."""
    return _read_csv(path, ResultRow, RESULT_COLUMNS)


def noise_sweep_records(rows: Sequence[ResultRow]) -> List[NoiseSweepRecord]:
    """Condense noise-sweep rows to test accuracies and relative improvement.

    Rows whose QNN test accuracy is zero get a NaN relative improvement.
    """
    records = []
    for row in rows:
        if row.acc_qnn_test > 0:
            improvement = relative_improvement(row.acc_eqk_test, row.acc_qnn_test)
        else:
            logger.warning(f"QNN test accuracy is 0 at L={row.L}, tau={row.tau}")
            improvement = math.nan
        records.append(
            NoiseSweepRecord(
                dataset=row.dataset,
                L=row.L,
                tau=row.tau,
                acc_qnn=row.acc_qnn_test,
                acc_eqk=row.acc_eqk_test,
                relative_improvement=improvement,
                seed=row.seed,
            )
        )
    return records


def emit_noise_sweep(records: Sequence[NoiseSweepRecord], path: PathLike) -> int:
    """Append noise-sweep records to a CSV (same header handling as emit_results)."""
    return _write_csv(path, NOISE_SWEEP_COLUMNS, records)


def read_noise_sweep(path: PathLike) -> List[NoiseSweepRecord]:
    """Parse a CSV written by emit_noise_sweep."""
    return _read_csv(path, NoiseSweepRecord, NOISE_SWEEP_COLUMNS)
