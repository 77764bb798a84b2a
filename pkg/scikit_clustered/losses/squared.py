"""
This file contains the squared loss, for a label vector or a label matrix.
"""
import numpy as np


def squared_loss(y: np.ndarray, scores: np.ndarray) -> np.ndarray:
    """
    Entrywise 1/2 (y - s)^2. Summed over a label matrix it is 1/2 ||Y - S||_F^2.
    """
    return 0.5 * (y - scores) ** 2


def squared_loss_derivative(y: np.ndarray, scores: np.ndarray) -> np.ndarray:
    return scores - y
