"""Trend-level reproduction of the published experiments.

These runs take minutes each and are deselected by default; run them with
``pytest -m slow``. Accuracies are medians over five seeds.
"""

import math

import numpy as np
import pytest

from src.config import build_experiment_config
from src.data import generate_dataset, split
from src.kernel import EqkSpec, KernelKind, KernelMatrix, gram_matrix, target_alignment
from src.noise import TAU_GRID
from src.orchestrator import ExperimentOrchestrator, noise_sweep_records, run_seeds
from src.qnn import (
    QnnParams,
    TrainConfig,
    accuracy,
    first_qubit_zero_probs,
    predict_batch,
    train_iterative,
    train_qnn,
)
from src.qnn.cost import correct_label_probs
from src.svm import svm_predict_batch, svm_train

pytestmark = pytest.mark.slow

SEEDS = [0, 1, 2, 3, 4]
THREADS = 5


def _medians(rows, column):
    by_n = {}
    for row in rows:
        by_n.setdefault(row.n, []).append(getattr(row, column))
    return {n: float(np.median(values)) for n, values in by_n.items()}


class TestScalingTrends:
    """Accuracy trends over the qubit count."""

    def test_corners_n_to_n(self):
        """EQK keeps up with the QNN, and both improve from n = 1 to n = 8."""
        cfg = build_experiment_config({"dataset": {"name": "corners"}})

        rows = run_seeds(cfg, SEEDS, threads=THREADS)
        qnn = _medians(rows, "acc_qnn_test")
        eqk = _medians(rows, "acc_eqk_test")

        for row in rows:
            assert row.acc_eqk_train >= row.acc_qnn_train - 0.01
        for n in range(1, 9):
            assert eqk[n] >= qnn[n] - 0.01
        assert qnn[8] >= qnn[1] + 0.03
        assert eqk[8] >= 0.93

    def test_circles_one_to_n(self):
        """Replicating the single-qubit QNN helps up to n = 4 and then holds."""
        cfg = build_experiment_config(
            {
                "dataset": {"name": "circles"},
                "kernel": {"construction": "one_to_n", "entangler": "cnot"},
            }
        )

        eqk = _medians(run_seeds(cfg, SEEDS, threads=THREADS), "acc_eqk_test")

        assert eqk[4] >= eqk[2] + 0.05
        for n in range(4, 9):
            assert eqk[n] >= 0.90

    def test_spiral_entanglers(self):
        """At n = 3 the CNOT cascade is not clearly worse than CZ."""
        medians = {}
        for entangler in ("cnot", "cz"):
            cfg = build_experiment_config(
                {
                    "dataset": {"name": "spiral"},
                    "model": {"n": 3},
                    "kernel": {"construction": "one_to_n", "entangler": entangler},
                }
            )
            rows = run_seeds(cfg, SEEDS, threads=THREADS)
            medians[entangler] = _medians(rows, "acc_eqk_test")[3]

        assert medians["cnot"] >= medians["cz"] - 0.02


class TestQnnTraining:
    """Single-run QNN training targets."""

    def test_sinus_single_qubit(self):
        """One qubit with seven layers fits the sinus boundary."""
        accuracies = []
        for seed in SEEDS:
            dataset = generate_dataset("sinus", 1000, seed)
            train, _ = split(dataset, 500, 500, seed)
            initial = QnnParams.random(1, 7, np.random.default_rng(seed))

            params = train_qnn(
                train, initial, TrainConfig(learning_rate=0.05, epochs=30, seed=seed)
            )
            accuracies.append(accuracy(params, train))

        assert float(np.median(accuracies)) >= 0.85


class TestNoiseTrend:
    """Degradation of the EQK advantage under noise."""

    def test_corners_noise_sweep(self):
        """Improvements stay bounded and the noisiest deep cell is no better."""
        cfg = build_experiment_config(
            {
                "dataset": {"name": "corners"},
                "model": {"layers": 10, "n_max": 2},
                "kernel": {"construction": "one_to_n"},
                "noise": {"enabled": True},
            }
        )

        rows = ExperimentOrchestrator(threads=THREADS).run_noise_sweep(cfg).rows
        cells = {
            (record.L, record.tau): record.relative_improvement
            for record in noise_sweep_records(rows)
        }

        assert len(cells) == 10 * len(TAU_GRID)
        assert all(-0.6 <= value <= 0.6 for value in cells.values() if not math.isnan(value))
        assert cells[(10, 0.03)] <= cells[(1, 0.005)]


class TestKernelTheory:
    """Properties the EQK construction guarantees."""

    def test_svm_redundant_for_perfect_qnn(self):
        """A QNN that maps every point onto its label state needs no SVM.

        With x = (0, x2) every gate is an RY rotation, so two layers give
        RY(2 x2 + b). b = -pi/2 sends x2 = pi/4 to |0> and x2 = -pi/4 to |1>.
        """
        offsets = np.array([-0.02, -0.01, 0.0, 0.01, 0.02])
        x2 = np.concatenate([np.pi / 4 + offsets, -np.pi / 4 - offsets])
        X = np.column_stack([np.zeros_like(x2), x2])
        y = np.array([1] * 5 + [-1] * 5)
        theta = np.zeros((2, 1, 3))
        theta[1, 0, 1] = -np.pi / 2
        params = QnnParams(1, 2, theta, np.zeros((2, 0, 3)))

        fidelity = correct_label_probs(first_qubit_zero_probs(params, X), y)
        gram = gram_matrix(EqkSpec(kind=KernelKind.N_TO_N, n_qubits=1), params, X)
        model = svm_train(gram, y, c=1.0, tol=1e-9)

        assert np.all(fidelity >= 0.99)
        assert np.array_equal(svm_predict_batch(model, gram.entries), predict_batch(params, X))
        assert abs(model.bias) <= 1e-3

    def test_training_improves_target_alignment(self):
        """Trained n-to-n kernels align with the labels better than random ones."""
        wins = 0
        for seed in SEEDS:
            dataset = generate_dataset("corners", 400, seed)
            train, _ = split(dataset, 200, 200, seed)
            first = TrainConfig(learning_rate=0.05, epochs=30, seed=seed)
            rest = TrainConfig(learning_rate=0.005, epochs=10, seed=seed)
            trained = train_iterative(train, 4, 2, first, rest)[-1]
            untrained = QnnParams.random(2, 4, np.random.default_rng(seed + 100))
            spec = EqkSpec(kind=KernelKind.N_TO_N, n_qubits=2)

            ta_trained = target_alignment(
                gram_matrix(spec, trained, train.X, threads=THREADS), train.y
            )
            ta_random = target_alignment(
                gram_matrix(spec, untrained, train.X, threads=THREADS), train.y
            )
            wins += ta_trained > ta_random

        assert wins >= 4

    def test_alignment_with_itself(self):
        """Target alignment of the ideal kernel y y^T is 1."""
        y = np.array([1, -1, 1, 1, -1])

        ideal = KernelMatrix(np.outer(y, y).astype(float))

        assert target_alignment(ideal, y) == pytest.approx(1.0)
