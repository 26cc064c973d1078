"""Adam optimizer on flat parameter vectors."""

import logging

import numpy as np

logger = logging.getLogger(__name__)


class AdamOptimizer:
    """Adaptive moment estimation.

    m_t = b1 m_{t-1} + (1 - b1) g
    v_t = b2 v_{t-1} + (1 - b2) g^2
    theta_t = theta_{t-1} - lr m_hat / (sqrt(v_hat) + eps)

    Args:
        size: Number of scalar parameters
        learning_rate: Step size
        beta1: First moment decay
        beta2: Second moment decay
        eps: Denominator offset
    """

    def __init__(
        self,
        size: int,
        learning_rate: float,
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8,
    ):
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = np.zeros(size)
        self.v = np.zeros(size)
        logger.debug(f"Adam over {size} parameters, learning rate {learning_rate}")

    def step(self, theta: np.ndarray, grad: np.ndarray) -> np.ndarray:
        """Return the parameters after one update.

        Args:
            theta: Current parameters
            grad: Gradient at theta

        Returns:
            Updated parameters (theta is not modified)
        """
        self.t += 1
        self.m = self.beta1 * self.m + (1 - self.beta1) * grad
        self.v = self.beta2 * self.v + (1 - self.beta2) * grad**2
        m_hat = self.m / (1 - self.beta1**self.t)
        v_hat = self.v / (1 - self.beta2**self.t)
        return theta - self.learning_rate * m_hat / (np.sqrt(v_hat) + self.eps)
