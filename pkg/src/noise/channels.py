"""Single-qubit Kraus channels and noise-strength helpers."""

import logging
import math
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.models.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

KrausPair = Tuple[np.ndarray, np.ndarray]

# Reference amplitude-damping and phase-flip probabilities of current hardware
GAMMA_REFERENCE = 0.001
ALPHA_REFERENCE = 0.0005

TAU_GRID = (0.0, 0.005, 0.010, 0.015, 0.020, 0.025, 0.030)


def _check_probability(value: float, name: str) -> float:
    value = float(value)
    if not (math.isfinite(value) and 0.0 <= value <= 1.0):
        raise InvalidArgumentError(f"{name} must be in [0, 1], got {value}")
    return value


class NoiseParams(BaseModel):
    """Per-gate noise strengths.

    Args:
        gamma: Amplitude-damping probability
        alpha: Phase-flip probability
    """

    gamma: float = Field(default=0.0, ge=0.0, le=1.0)
    alpha: float = Field(default=0.0, ge=0.0, le=1.0)

    model_config = ConfigDict(frozen=True)

    @property
    def is_noiseless(self) -> bool:
        """Whether both channels are the identity."""
        return self.gamma == 0.0 and self.alpha == 0.0


def amplitude_damping_kraus(gamma: float) -> KrausPair:
    """K0 = [[1, 0], [0, sqrt(1 - gamma)]], K1 = [[0, sqrt(gamma)], [0, 0]].

    Raises:
        InvalidArgumentError: If gamma is outside [0, 1]
    """
    gamma = _check_probability(gamma, "gamma")
    k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - gamma)]], dtype=complex)
    k1 = np.array([[0.0, np.sqrt(gamma)], [0.0, 0.0]], dtype=complex)
    return k0, k1


def phase_flip_kraus(alpha: float) -> KrausPair:
    """K0 = sqrt(1 - alpha) I, K1 = sqrt(alpha) Z.

    Raises:
        InvalidArgumentError: If alpha is outside [0, 1]
    """
    alpha = _check_probability(alpha, "alpha")
    k0 = np.sqrt(1.0 - alpha) * np.eye(2, dtype=complex)
    k1 = np.sqrt(alpha) * np.diag([1.0, -1.0]).astype(complex)
    return k0, k1


def tau_noise(tau: float) -> NoiseParams:
    """Single-strength noise model with gamma = alpha = tau.

    Raises:
        InvalidArgumentError: If tau is outside [0, 1]
    """
    tau = _check_probability(tau, "tau")
    return NoiseParams(gamma=tau, alpha=tau)


def damping_probability(duration: float, t1: float) -> float:
    """Decay probability p = 1 - exp(-duration / T1) of a gate.

    Args:
        duration: Gate time
        t1: Relaxation time, same unit as duration

    Raises:
        InvalidArgumentError: If duration < 0 or t1 <= 0
    """
    if duration < 0 or t1 <= 0:
        raise InvalidArgumentError(
            f"Need duration >= 0 and t1 > 0, got {duration} and {t1}"
        )
    return float(1.0 - math.exp(-duration / t1))


def relative_improvement(acc_combined: float, acc_qnn: float) -> float:
    """(acc_combined - acc_qnn) / acc_qnn.

    Raises:
        InvalidArgumentError: If acc_qnn is zero
    """
    if acc_qnn == 0:
        raise InvalidArgumentError("Relative improvement is undefined for acc_qnn = 0")
    return float((acc_combined - acc_qnn) / acc_qnn)
