"""Amplitude-damping and phase-flip noise on QNN and EQK circuits."""

from src.noise.channels import (
    ALPHA_REFERENCE,
    GAMMA_REFERENCE,
    TAU_GRID,
    NoiseParams,
    amplitude_damping_kraus,
    damping_probability,
    phase_flip_kraus,
    relative_improvement,
    tau_noise,
)
from src.noise.density import (
    DensityMatrix,
    apply_channel,
    apply_gate_noisy,
    evolve_density,
    noisy_accuracy,
    noisy_cross_kernel,
    noisy_gram_matrix,
    noisy_kernel_value,
    noisy_qnn_prob,
    noisy_qnn_probs,
)

__all__ = [
    "ALPHA_REFERENCE",
    "GAMMA_REFERENCE",
    "TAU_GRID",
    "DensityMatrix",
    "NoiseParams",
    "amplitude_damping_kraus",
    "apply_channel",
    "apply_gate_noisy",
    "damping_probability",
    "evolve_density",
    "noisy_accuracy",
    "noisy_cross_kernel",
    "noisy_gram_matrix",
    "noisy_kernel_value",
    "noisy_qnn_prob",
    "noisy_qnn_probs",
    "phase_flip_kraus",
    "relative_improvement",
    "tau_noise",
]
