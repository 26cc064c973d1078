"""Mini-batch Adam training and the iterative qubit-scaling procedure.

Scaling starts from a trained single-qubit QNN. Each new qubit receives
zero single-qubit angles and each new controlled gate zero angles, so the
extra gates are identities and the first-qubit readout, and with it the
cost, is unchanged when a stage begins.
"""

import logging
import time
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.models.errors import InvalidArgumentError, PreconditionError
from src.qnn.cost import fidelity_cost
from src.qnn.gradient import cost_and_gradient
from src.qnn.model import DataLike, QnnParams, as_arrays
from src.qnn.optimizer import AdamOptimizer

logger = logging.getLogger(__name__)


class TrainConfig(BaseModel):
    """Hyperparameters of one training run.

    Args:
        learning_rate: Adam step size
        epochs: Passes over the training set
        batch_size: Points per Adam step
        seed: Seed of the shuffling generator
    """

    learning_rate: float = Field(..., gt=0)
    epochs: int = Field(..., ge=1)
    batch_size: int = Field(default=24, ge=1)
    seed: int = Field(default=0, ge=0)

    model_config = ConfigDict(frozen=True)


FIRST_STAGE = TrainConfig(learning_rate=0.05, epochs=30)
LATER_STAGES = TrainConfig(learning_rate=0.005, epochs=10)


def train_qnn(data: DataLike, params0: QnnParams, cfg: TrainConfig) -> QnnParams:
    """Train a QNN with Adam over shuffled mini-batches.

    The data are reshuffled every epoch from a generator seeded with
    cfg.seed; the last batch of an epoch may be smaller.

    Args:
        data: Training points
        params0: Initial parameters
        cfg: Training configuration

    Returns:
        Parameters after cfg.epochs epochs

    Raises:
        InvalidArgumentError: If the batch size exceeds the training set
    """
    X, y = as_arrays(data)
    size = X.shape[0]
    if cfg.batch_size > size:
        raise InvalidArgumentError(
            f"batch_size {cfg.batch_size} exceeds training set size {size}"
        )

    rng = np.random.default_rng(cfg.seed)
    optimizer = AdamOptimizer(params0.n_parameters, cfg.learning_rate)
    theta = params0.flatten()
    start = time.time()

    for epoch in range(cfg.epochs):
        order = rng.permutation(size)
        epoch_cost = 0.0
        for begin in range(0, size, cfg.batch_size):
            idx = order[begin : begin + cfg.batch_size]
            params = QnnParams.from_flat(params0.n_qubits, params0.layers, theta)
            batch_cost, grad = cost_and_gradient(params, (X[idx], y[idx]))
            epoch_cost += batch_cost * len(idx)
            theta = optimizer.step(theta, grad)
        logger.debug(
            f"n={params0.n_qubits} epoch {epoch + 1}/{cfg.epochs}: "
            f"mean batch cost {epoch_cost / size:.6f}"
        )

    trained = QnnParams.from_flat(params0.n_qubits, params0.layers, theta)
    logger.info(
        f"Trained {params0.n_qubits}-qubit QNN (L={params0.layers}) for "
        f"{cfg.epochs} epochs in {time.time() - start:.2f}s"
    )
    return trained


def expand_qubit(params: QnnParams) -> QnnParams:
    """Add one qubit whose new theta and phi angles are all zero."""
    n, layers = params.n_qubits, params.layers
    theta = np.zeros((layers, n + 1, 3))
    theta[:, :n, :] = params.theta
    phi = np.zeros((layers, n, 3))
    phi[:, : n - 1, :] = params.phi
    return QnnParams(n + 1, layers, theta, phi)


def train_iterative(
    data: DataLike,
    layers: int,
    n_target: int,
    cfg_first: TrainConfig = FIRST_STAGE,
    cfg_rest: TrainConfig = LATER_STAGES,
    params0: Optional[QnnParams] = None,
    init_seed: Optional[int] = None,
) -> List[QnnParams]:
    """Train QNNs of 1, 2, ..., n_target qubits, each seeded by the last.

    Args:
        data: Training points
        layers: Number of layers L
        n_target: Largest qubit count, at most L + 1
        cfg_first: Configuration of the single-qubit stage
        cfg_rest: Configuration of every later stage (its seed is offset
            by the stage's qubit count)
        params0: Initial single-qubit parameters; random if None
        init_seed: Seed for the random initial parameters (cfg_first.seed
            if None)

    Returns:
        Trained parameters for every n = 1 ... n_target

    Raises:
        PreconditionError: If n_target > L + 1 or n_target < 1
    """
    if not 1 <= n_target <= layers + 1:
        raise PreconditionError(
            f"n_target must be in [1, L + 1] = [1, {layers + 1}], got {n_target}"
        )
    if params0 is None:
        seed = cfg_first.seed if init_seed is None else init_seed
        params0 = QnnParams.random(1, layers, np.random.default_rng(seed))
    elif params0.n_qubits != 1 or params0.layers != layers:
        raise PreconditionError(
            "params0 must be a single-qubit model with the requested layers"
        )

    stages = [train_qnn(data, params0, cfg_first)]
    logger.info(f"Stage n=1 final cost {fidelity_cost(stages[0], data):.6f}")

    for n in range(2, n_target + 1):
        initial = expand_qubit(stages[-1])
        stage_cfg = cfg_rest.model_copy(update={"seed": cfg_rest.seed + n})
        stages.append(train_qnn(data, initial, stage_cfg))
        logger.info(f"Stage n={n} final cost {fidelity_cost(stages[-1], data):.6f}")

    return stages
