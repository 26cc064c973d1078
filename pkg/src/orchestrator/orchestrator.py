"""Experiment orchestrator.

Runs the QNN -> EQK -> SVM pipeline as a sequence of timed stages (data,
train, kernel, svm, evaluate) and turns every evaluated configuration
into a ResultRow. Independent grid points (seeds, noise cells) run on a
thread pool; results are always returned in grid order.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

import numpy as np
from pydantic import ValidationError

from src.config import ExperimentConfig, get_settings
from src.data import Dataset, generate_dataset, split
from src.kernel import (
    EqkSpec,
    KernelKind,
    KernelMatrix,
    cross_kernel,
    gram_matrix,
)
from src.models.errors import ConfigError, PreconditionError
from src.noise import (
    NoiseParams,
    noisy_accuracy,
    noisy_cross_kernel,
    noisy_gram_matrix,
    tau_noise,
)
from src.orchestrator.results import ResultRow
from src.qnn import QnnParams, TrainConfig, accuracy, train_iterative, train_qnn
from src.storage import ArtifactStore
from src.svm import SvmModel, svm_predict_batch, svm_train

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

NO_ENTANGLER = "none"


@dataclass
class StageResult:
    """Timing of one pipeline stage.

    Args:
        stage_name: Stage identifier (data, train, kernel, svm, evaluate)
        latency_ms: Execution time in milliseconds
        metadata: Stage-specific details
    """

    stage_name: str
    latency_ms: float
    metadata: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary representation.

        Returns:
            Dictionary representation
        """
        return {
            "stage": self.stage_name,
            "latency_ms": round(self.latency_ms, 2),
            "metadata": self.metadata,
        }


@dataclass
class ExperimentRun:
    """Rows and stage timings of one orchestrated run.

    Args:
        rows: Result rows in evaluation order
        stages: Per-stage timings
        total_latency_ms: Wall time of the whole run
    """

    rows: List[ResultRow]
    stages: List[StageResult]
    total_latency_ms: float

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary representation.

        Returns:
            Dictionary representation
        """
        return {
            "rows": [row.model_dump() for row in self.rows],
            "stages": [stage.to_dict() for stage in self.stages],
            "total_latency_ms": round(self.total_latency_ms, 2),
        }


@dataclass
class _Scores:
    acc_train: float
    acc_test: float
    gram: KernelMatrix
    model: SvmModel


class ExperimentOrchestrator:
    """Coordinates data generation, training, kernel construction and SVM fitting."""

    def __init__(
        self,
        threads: Optional[int] = None,
        store: Optional[ArtifactStore] = None,
    ):
        """Initialize the orchestrator.

        Args:
            threads: Worker threads (settings.threads if None)
            store: Artifact store for params, kernels and models (nothing is
                stored if None)
        """
        self.threads = threads or get_settings().threads
        self.store = store
        self.stages: List[StageResult] = []
        logger.info(f"Initialized Experiment Orchestrator (threads={self.threads})")

    def _timed(
        self,
        name: str,
        func: Callable[[], T],
        record: Optional[List[StageResult]] = None,
        **metadata: Any,
    ) -> T:
        start = time.time()
        result = func()
        latency_ms = (time.time() - start) * 1000
        target = self.stages if record is None else record
        target.append(StageResult(name, latency_ms, dict(metadata)))
        logger.debug(f"Stage {name} {metadata} took {latency_ms:.2f}ms")
        return result

    def _map(self, func: Callable[[T], R], items: Sequence[T]) -> List[R]:
        if self.threads > 1 and len(items) > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                return list(pool.map(func, items))
        return [func(item) for item in items]

    def _finish(self, rows: List[ResultRow], start: float) -> ExperimentRun:
        total_ms = (time.time() - start) * 1000
        logger.info(f"Run complete: {len(rows)} rows, {total_ms:.2f}ms total")
        run = ExperimentRun(rows=rows, stages=self.stages, total_latency_ms=total_ms)
        self.stages = []
        return run

    def prepare_data(self, cfg: ExperimentConfig) -> Tuple[Dataset, Dataset]:
        """Generate the configured dataset and split it.

        Returns:
            Tuple of (train, test)
        """
        section = cfg.dataset

        def build() -> Tuple[Dataset, Dataset]:
            dataset = generate_dataset(section.name, section.total_points, section.seed)
            return split(dataset, section.n_train, section.n_test, section.seed)

        train, test = self._timed("data", build, dataset=section.name)
        if self.store is not None:
            tag = f"{section.name}_s{section.seed}"
            self.store.save_dataset(f"{tag}_train", train)
            self.store.save_dataset(f"{tag}_test", test)
        return train, test

    def _fit_and_score(
        self,
        spec: EqkSpec,
        params: QnnParams,
        train: Dataset,
        test: Dataset,
        cfg: ExperimentConfig,
        noise: Optional[NoiseParams] = None,
        threads: Optional[int] = None,
        record: Optional[List[StageResult]] = None,
    ) -> _Scores:
        threads = self.threads if threads is None else threads
        noisy = noise is not None and not noise.is_noiseless
        if noisy:
            gram = self._timed(
                "kernel",
                lambda: noisy_gram_matrix(spec, params, train.X, noise, threads),
                record,
                spec=spec.label,
                tau=noise.gamma,
            )
            cross = noisy_cross_kernel(spec, params, test.X, train.X, noise, threads)
        else:
            gram = self._timed(
                "kernel",
                lambda: gram_matrix(spec, params, train.X, threads=threads),
                record,
                spec=spec.label,
            )
            cross = cross_kernel(spec, params, test.X, train.X, threads=threads)

        model = self._timed(
            "svm",
            lambda: svm_train(gram, train.y, cfg.kernel.svm_c, cfg.kernel.svm_tol),
            record,
            spec=spec.label,
        )
        acc_train = float(np.mean(svm_predict_batch(model, gram.entries) == train.y))
        acc_test = float(np.mean(svm_predict_batch(model, cross) == test.y))
        return _Scores(acc_train, acc_test, gram, model)

    def _store_stage(
        self, tag: str, params: QnnParams, scores: Optional[_Scores] = None
    ) -> None:
        if self.store is None:
            return
        self.store.save_params(tag, params)
        if scores is not None:
            self.store.save_kernel(tag, scores.gram)
            self.store.save_svm(tag, scores.model)

    @staticmethod
    def train_configs(cfg: ExperimentConfig) -> Tuple[TrainConfig, TrainConfig]:
        """TrainConfigs of the first stage and of every later stage.

        Raises:
            ConfigError: If the train section does not give valid configs
        """
        section = cfg.train
        try:
            first = TrainConfig(
                learning_rate=section.lr_first,
                epochs=section.epochs_first,
                batch_size=section.batch_size,
                seed=section.init_seed,
            )
            rest = TrainConfig(
                learning_rate=section.lr_rest,
                epochs=section.epochs_rest,
                batch_size=section.batch_size,
                seed=section.init_seed,
            )
        except ValidationError as e:
            raise ConfigError(f"Invalid train section: {e}", fields=["train"])
        return first, rest

    def run_experiment(self, cfg: ExperimentConfig) -> ExperimentRun:
        """Train QNNs, build EQKs, fit SVMs and score every qubit count.

        n_to_n trains n = 1 ... n_max iteratively and uses each stage's QNN
        as its kernel. one_to_n trains one single-qubit QNN and replicates it
        over n = 2 ... n_max qubits.

        Args:
            cfg: Experiment configuration

        Returns:
            ExperimentRun with one row per qubit count

        Raises:
            PreconditionError: If a qubit count exceeds layers + 1
        """
        start = time.time()
        layers = cfg.model.layers
        counts = cfg.qubit_counts()
        if max(counts) > layers + 1:
            raise PreconditionError(
                f"model.n_max = {max(counts)} exceeds layers + 1 = {layers + 1}"
            )
        construction = cfg.kernel.construction
        logger.info(
            f"Starting experiment {cfg.dataset.name} {construction.value} "
            f"L={layers} n={counts}"
        )

        train, test = self.prepare_data(cfg)
        first, rest = self.train_configs(cfg)
        n_train_target = max(counts) if construction == KernelKind.N_TO_N else 1
        stages = self._timed(
            "train",
            lambda: train_iterative(train, layers, n_train_target, first, rest),
            n_target=n_train_target,
        )

        rows = []
        for n in counts:
            if construction == KernelKind.N_TO_N:
                params = stages[n - 1]
                spec = EqkSpec(kind=construction, n_qubits=n)
                entangler = NO_ENTANGLER
            else:
                params = stages[0]
                spec = EqkSpec(
                    kind=construction, n_qubits=n, entangler=cfg.kernel.entangler
                )
                entangler = cfg.kernel.entangler.value

            scores = self._fit_and_score(spec, params, train, test, cfg)
            acc_qnn_train, acc_qnn_test = self._timed(
                "evaluate",
                lambda: (accuracy(params, train), accuracy(params, test)),
                n=n,
            )
            self._store_stage(
                f"{cfg.dataset.name}_{construction.value}_n{n}_s{cfg.dataset.seed}",
                params,
                scores,
            )
            row = ResultRow(
                dataset=cfg.dataset.name,
                construction=construction.value,
                entangler=entangler,
                n=n,
                L=layers,
                tau=0.0,
                acc_qnn_train=acc_qnn_train,
                acc_qnn_test=acc_qnn_test,
                acc_eqk_train=scores.acc_train,
                acc_eqk_test=scores.acc_test,
                seed=cfg.dataset.seed,
                wall_time_seconds=time.time() - start,
            )
            logger.info(
                f"n={n}: QNN test {row.acc_qnn_test:.3f}, EQK test {row.acc_eqk_test:.3f}"
            )
            rows.append(row)

        return self._finish(rows, start)

    def run_layer_sweep(self, cfg: ExperimentConfig) -> ExperimentRun:
        """2-to-2 (n_to_n, n = 2) experiment for every L in sweep.layers."""
        start = time.time()
        train, test = self.prepare_data(cfg)
        first, rest = self.train_configs(cfg)
        rows = []
        for layers in cfg.sweep.layers:
            stages = self._timed(
                "train",
                lambda: train_iterative(train, layers, 2, first, rest),
                layers=layers,
            )
            params = stages[1]
            spec = EqkSpec(kind=KernelKind.N_TO_N, n_qubits=2)
            scores = self._fit_and_score(spec, params, train, test, cfg)
            self._store_stage(
                f"{cfg.dataset.name}_layers{layers}_s{cfg.dataset.seed}", params, scores
            )
            rows.append(
                ResultRow(
                    dataset=cfg.dataset.name,
                    construction=KernelKind.N_TO_N.value,
                    entangler=NO_ENTANGLER,
                    n=2,
                    L=layers,
                    tau=0.0,
                    acc_qnn_train=accuracy(params, train),
                    acc_qnn_test=accuracy(params, test),
                    acc_eqk_train=scores.acc_train,
                    acc_eqk_test=scores.acc_test,
                    seed=cfg.dataset.seed,
                    wall_time_seconds=time.time() - start,
                )
            )
        return self._finish(rows, start)

    def run_noise_sweep(self, cfg: ExperimentConfig) -> ExperimentRun:
        """Noisy 1-to-2 study over the (noise.layers x noise.taus) grid.

        For each L a single-qubit QNN is trained without noise using
        noise.epochs and noise.learning_rate. Each tau then evaluates the
        noisy QNN and the noisy 1-to-2 EQK + SVM.

        Raises:
            PreconditionError: If noise is disabled, the construction is not
                one_to_n or model.n is set to something other than 2
        """
        if not cfg.noise.enabled:
            raise PreconditionError("noise.enabled must be true for a noise sweep")
        if cfg.kernel.construction != KernelKind.ONE_TO_N:
            raise PreconditionError("The noise sweep uses kernel.construction = one_to_n")
        if cfg.model.n not in (None, 2):
            raise PreconditionError(f"The noise sweep uses n = 2, got model.n = {cfg.model.n}")

        start = time.time()
        train, test = self.prepare_data(cfg)
        short = TrainConfig(
            learning_rate=cfg.noise.learning_rate,
            epochs=cfg.noise.epochs,
            batch_size=cfg.train.batch_size,
            seed=cfg.train.init_seed,
        )

        trained: Dict[int, QnnParams] = {}
        for layers in cfg.noise.layers:
            initial = QnnParams.random(
                1, layers, np.random.default_rng(cfg.train.init_seed)
            )
            trained[layers] = self._timed(
                "train", lambda: train_qnn(train, initial, short), layers=layers
            )
            self._store_stage(
                f"{cfg.dataset.name}_noise_layers{layers}_s{cfg.dataset.seed}",
                trained[layers],
            )

        grid = [(layers, tau) for layers in cfg.noise.layers for tau in cfg.noise.taus]
        spec = EqkSpec(
            kind=KernelKind.ONE_TO_N, n_qubits=2, entangler=cfg.kernel.entangler
        )
        inner_threads = 1 if self.threads > 1 and len(grid) > 1 else self.threads

        def evaluate(point: Tuple[int, float]) -> Tuple[ResultRow, List[StageResult]]:
            layers, tau = point
            cell_stages: List[StageResult] = []
            params = trained[layers]
            noise = tau_noise(tau)
            if noise.is_noiseless:
                acc_train, acc_test = accuracy(params, train), accuracy(params, test)
            else:
                acc_train = noisy_accuracy(params, train, noise)
                acc_test = noisy_accuracy(params, test, noise)
            scores = self._fit_and_score(
                spec,
                params,
                train,
                test,
                cfg,
                noise=noise,
                threads=inner_threads,
                record=cell_stages,
            )
            for stage in cell_stages:
                stage.metadata.update(layers=layers, tau=tau)
            logger.info(
                f"L={layers} tau={tau}: QNN test {acc_test:.3f}, "
                f"EQK test {scores.acc_test:.3f}"
            )
            row = ResultRow(
                dataset=cfg.dataset.name,
                construction=KernelKind.ONE_TO_N.value,
                entangler=cfg.kernel.entangler.value,
                n=2,
                L=layers,
                tau=tau,
                acc_qnn_train=acc_train,
                acc_qnn_test=acc_test,
                acc_eqk_train=scores.acc_train,
                acc_eqk_test=scores.acc_test,
                seed=cfg.dataset.seed,
                wall_time_seconds=time.time() - start,
            )
            return row, cell_stages

        rows = []
        for row, cell_stages in self._map(evaluate, grid):
            rows.append(row)
            self.stages.extend(cell_stages)
        return self._finish(rows, start)


def seeded_config(cfg: ExperimentConfig, seed: int) -> ExperimentConfig:
    """Copy of cfg whose dataset seed and init seed are both seed."""
    return cfg.model_copy(
        update={
            "dataset": cfg.dataset.model_copy(update={"seed": seed}),
            "train": cfg.train.model_copy(update={"init_seed": seed}),
        }
    )


def run_seeds(
    cfg: ExperimentConfig, seeds: Sequence[int], threads: int = 1
) -> List[ResultRow]:
    """run_experiment once per seed; rows come back in seed order.

    Each seed gets its own orchestrator; with several threads the seeds run
    concurrently and each runs its kernels single-threaded.
    """
    inner = 1 if threads > 1 and len(seeds) > 1 else threads

    def run(seed: int) -> List[ResultRow]:
        return ExperimentOrchestrator(threads=inner).run_experiment(
            seeded_config(cfg, seed)
        ).rows

    if threads > 1 and len(seeds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            batches = list(pool.map(run, seeds))
    else:
        batches = [run(seed) for seed in seeds]
    return [row for batch in batches for row in batch]
