"""
This file contains the binary logistic loss and the multiclass softmax cross-entropy.
"""
import numpy as np
from scipy.special import expit, logsumexp, softmax


def to_signed(y: np.ndarray) -> np.ndarray:
    """
    Map {0,1} (or already {-1,+1}) labels to {-1,+1}.
    """
    return np.where(np.asarray(y) > 0, 1.0, -1.0)


def logistic_loss(y: np.ndarray, scores: np.ndarray) -> np.ndarray:
    """
    Per sample log(1 + exp(-y s)), evaluated without overflow.

    :param y: Labels in {0,1} or {-1,+1}.
    :param scores: Linear scores w^T x.
    :return: The per sample loss.
    """
    return np.logaddexp(0.0, -to_signed(y) * scores)


def logistic_loss_derivative(y: np.ndarray, scores: np.ndarray) -> np.ndarray:
    signed = to_signed(y)
    return -signed * expit(-signed * scores)


def softmax_cross_entropy(Y: np.ndarray, scores: np.ndarray) -> np.ndarray:
    """
    Per sample -sum_k Y_k log softmax(s)_k with one-hot rows Y.
    """
    return logsumexp(scores, axis=1) - np.sum(Y * scores, axis=1)


def softmax_cross_entropy_derivative(Y: np.ndarray, scores: np.ndarray) -> np.ndarray:
    return softmax(scores, axis=1) - Y
