"""Command-line entry point.

Every subcommand reads one experiment config (--config, defaults when
omitted) and reads or writes file artifacts, so the pipeline can be run
stage by stage:

    python -m src.cli gen-data --config exp.cfg --out data/
    python -m src.cli train-qnn --config exp.cfg --train data/train.csv --out qnn.json
    python -m src.cli build-kernel --config exp.cfg --params qnn.json \\
        --rows data/train.csv --out gram.txt
    python -m src.cli fit-svm --config exp.cfg --kernel gram.txt \\
        --train data/train.csv --out svm.txt

or end to end with run-experiment, noise-sweep and layer-sweep.

Exit codes: 0 on success, 2 on a configuration error, 1 on any other
failure.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np
from pydantic import ValidationError

from src.config import (
    ExperimentConfig,
    get_settings,
    load_experiment_config,
    setup_logging,
)
from src.kernel import EqkSpec, KernelKind, cross_kernel, gram_matrix
from src.models.errors import ConfigError, EqkError, InvalidArgumentError
from src.orchestrator import (
    ExperimentOrchestrator,
    emit_noise_sweep,
    emit_results,
    noise_sweep_records,
    run_seeds,
)
from src.qnn import QnnParams, accuracy
from src.qnn import train_iterative
from src.storage import (
    ArtifactStore,
    load_dataset_file,
    load_kernel_file,
    save_dataset_file,
    save_svm_file,
)
from src.storage.formats import read_matrix, write_matrix
from src.svm import svm_predict_batch, svm_train

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME_ERROR = 1
EXIT_CONFIG_ERROR = 2


def _load_config(args: argparse.Namespace) -> ExperimentConfig:
    if args.config is None:
        logger.info("No --config given, using defaults")
        return ExperimentConfig()
    return load_experiment_config(args.config)


def _out(args: argparse.Namespace, default: str) -> Path:
    path = Path(args.out or default)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _kernel_spec(cfg: ExperimentConfig, params: QnnParams, n: Optional[int]) -> EqkSpec:
    try:
        if cfg.kernel.construction == KernelKind.N_TO_N:
            return EqkSpec(kind=KernelKind.N_TO_N, n_qubits=n or params.n_qubits)
        width = n or max(cfg.qubit_counts())
        return EqkSpec(
            kind=KernelKind.ONE_TO_N, n_qubits=width, entangler=cfg.kernel.entangler
        )
    except ValidationError as e:
        raise ConfigError(f"Invalid kernel width: {e}", fields=["--n"])


def cmd_gen_data(args: argparse.Namespace, cfg: ExperimentConfig) -> None:
    """Write the configured train/test split as train.csv and test.csv."""
    out_dir = Path(args.out or "data")
    out_dir.mkdir(parents=True, exist_ok=True)
    train, test = ExperimentOrchestrator(threads=args.threads).prepare_data(cfg)
    save_dataset_file(out_dir / "train.csv", train)
    save_dataset_file(out_dir / "test.csv", test)
    print(f"Wrote {len(train)} training and {len(test)} test points to {out_dir}")


def cmd_train_qnn(args: argparse.Namespace, cfg: ExperimentConfig) -> None:
    """Iteratively train a QNN and write its parameters as JSON."""
    if args.train:
        train = load_dataset_file(args.train, seed=cfg.dataset.seed)
    else:
        train, _ = ExperimentOrchestrator(threads=args.threads).prepare_data(cfg)

    if cfg.kernel.construction == KernelKind.ONE_TO_N:
        n_target = 1
    else:
        n_target = args.n or max(cfg.qubit_counts())
    first, rest = ExperimentOrchestrator.train_configs(cfg)
    params = train_iterative(train, cfg.model.layers, n_target, first, rest)[-1]

    out = _out(args, "qnn.json")
    params.save(out)
    print(
        f"Trained n={params.n_qubits}, L={params.layers}: "
        f"train accuracy {accuracy(params, train):.4f}, saved to {out}"
    )


def cmd_build_kernel(args: argparse.Namespace, cfg: ExperimentConfig) -> None:
    """Write the Gram matrix of --rows, or the cross kernel against --cols."""
    params = QnnParams.load(args.params)
    spec = _kernel_spec(cfg, params, args.n)
    rows = load_dataset_file(args.rows)
    out = _out(args, "kernel.txt")
    if args.cols:
        cols = load_dataset_file(args.cols)
        write_matrix(out, cross_kernel(spec, params, rows.X, cols.X, args.threads))
    else:
        write_matrix(out, gram_matrix(spec, params, rows.X, args.threads).entries)
    print(f"Wrote {spec.label} kernel to {out}")


def cmd_fit_svm(args: argparse.Namespace, cfg: ExperimentConfig) -> None:
    """Fit an SVM on a stored Gram matrix; optionally score a test cross kernel."""
    gram = load_kernel_file(args.kernel)
    train = load_dataset_file(args.train)
    model = svm_train(gram, train.y, cfg.kernel.svm_c, cfg.kernel.svm_tol)

    out = _out(args, "svm.txt")
    save_svm_file(out, model)
    acc_train = float(np.mean(svm_predict_batch(model, gram.entries) == train.y))
    print(f"SVM train accuracy {acc_train:.4f}, saved to {out}")

    if args.test_kernel:
        if not args.test:
            raise InvalidArgumentError("--test-kernel needs --test for the labels")
        test = load_dataset_file(args.test)
        rows = read_matrix(args.test_kernel)
        acc_test = float(np.mean(svm_predict_batch(model, rows) == test.y))
        print(f"SVM test accuracy {acc_test:.4f}")


def cmd_run_experiment(args: argparse.Namespace, cfg: ExperimentConfig) -> None:
    """Run the full pipeline for every qubit count and append the result rows."""
    if args.seeds:
        rows = run_seeds(cfg, args.seeds, threads=args.threads)
    else:
        store = ArtifactStore(args.artifacts) if args.artifacts else None
        orchestrator = ExperimentOrchestrator(threads=args.threads, store=store)
        rows = orchestrator.run_experiment(cfg).rows
    out = _out(args, "results.csv")
    emit_results(rows, out)
    print(f"Wrote {len(rows)} rows to {out}")


def cmd_noise_sweep(args: argparse.Namespace, cfg: ExperimentConfig) -> None:
    """Run the noisy 1-to-2 sweep; --summary also writes relative improvements."""
    rows = ExperimentOrchestrator(threads=args.threads).run_noise_sweep(cfg).rows
    out = _out(args, "noise_sweep.csv")
    emit_results(rows, out)
    print(f"Wrote {len(rows)} rows to {out}")
    if args.summary:
        emit_noise_sweep(noise_sweep_records(rows), args.summary)
        print(f"Wrote relative improvements to {args.summary}")


def cmd_layer_sweep(args: argparse.Namespace, cfg: ExperimentConfig) -> None:
    """Run the 2-to-2 experiment for every L in sweep.layers."""
    rows = ExperimentOrchestrator(threads=args.threads).run_layer_sweep(cfg).rows
    out = _out(args, "layer_sweep.csv")
    emit_results(rows, out)
    print(f"Wrote {len(rows)} rows to {out}")


def _seed_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text}")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per pipeline stage."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None, help="Experiment config file")
    common.add_argument("--out", type=str, default=None, help="Output path")
    common.add_argument(
        "--threads",
        type=int,
        default=None,
        help="Worker threads (default: EQK_THREADS setting)",
    )
    common.add_argument("--verbose", action="store_true", help="Enable DEBUG logging")

    parser = argparse.ArgumentParser(
        prog="eqk", description="QNN to embedding quantum kernel experiments"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser(
        "gen-data", parents=[common], help="Generate and split a dataset (--out DIR)"
    )
    gen.set_defaults(handler=cmd_gen_data)

    train = commands.add_parser(
        "train-qnn", parents=[common], help="Train a QNN iteratively"
    )
    train.add_argument("--train", type=str, default=None, help="Training CSV")
    train.add_argument("--n", type=int, default=None, help="Qubit count to train up to")
    train.set_defaults(handler=cmd_train_qnn)

    kernel = commands.add_parser(
        "build-kernel", parents=[common], help="Build a kernel matrix"
    )
    kernel.add_argument("--params", type=str, required=True, help="QNN parameters JSON")
    kernel.add_argument("--rows", type=str, required=True, help="Row points CSV")
    kernel.add_argument("--cols", type=str, default=None, help="Column points CSV")
    kernel.add_argument("--n", type=int, default=None, help="Kernel qubit count")
    kernel.set_defaults(handler=cmd_build_kernel)

    svm = commands.add_parser(
        "fit-svm", parents=[common], help="Fit an SVM on a Gram matrix"
    )
    svm.add_argument("--kernel", type=str, required=True, help="Gram matrix file")
    svm.add_argument("--train", type=str, required=True, help="Training CSV (labels)")
    svm.add_argument("--test-kernel", type=str, default=None, help="Cross kernel file")
    svm.add_argument("--test", type=str, default=None, help="Test CSV (labels)")
    svm.set_defaults(handler=cmd_fit_svm)

    run = commands.add_parser(
        "run-experiment", parents=[common], help="Run the full pipeline"
    )
    run.add_argument(
        "--artifacts", type=str, default=None, help="Store params, kernels and models"
    )
    run.add_argument(
        "--seeds", type=_seed_list, default=None, help="Comma-separated seeds"
    )
    run.set_defaults(handler=cmd_run_experiment)

    noise = commands.add_parser(
        "noise-sweep", parents=[common], help="Noisy 1-to-2 sweep over L and tau"
    )
    noise.add_argument(
        "--summary", type=str, default=None, help="Relative improvement CSV"
    )
    noise.set_defaults(handler=cmd_noise_sweep)

    layers = commands.add_parser(
        "layer-sweep", parents=[common], help="2-to-2 experiment over sweep.layers"
    )
    layers.set_defaults(handler=cmd_layer_sweep)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one subcommand and return its exit code."""
    args = build_parser().parse_args(argv)
    settings = get_settings()
    setup_logging(settings, verbose=args.verbose)
    args.threads = args.threads or settings.threads

    try:
        cfg = _load_config(args)
        args.handler(args, cfg)
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except (EqkError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_RUNTIME_ERROR
    return EXIT_OK
