"""
This file contains the evaluation metrics of the experiments.
"""
import numpy as np

from ..exceptions import DimensionError
from ..models.clustered import ClusteredLinearModel, ModelVariant
from ..models.dataset import Dataset


def mse_samples(dataset: Dataset, experts: np.ndarray) -> float:
    """
    Best expert error, 1/(2n) sum_i min_q (y_i - v_q^T x_i)^2.

    :param dataset: The test Dataset with a label vector.
    :param experts: The experts V, d x Q (a d vector is one expert).
    :return: The metric.
    """
    V = np.asarray(experts, dtype=float)
    if V.ndim == 1:
        V = V[:, None]
    if V.shape[0] != dataset.n_features or V.shape[1] < 1:
        raise DimensionError(f"Experts must be d x Q with Q >= 1! {V.shape}")
    residuals = (dataset.y[:, None] - dataset.X @ V) ** 2
    return float(residuals.min(axis=1).sum()) / (2 * dataset.n_samples)


def predict_weighted(model: ClusteredLinearModel, X: np.ndarray) -> np.ndarray:
    """
    Prediction of a sample clustered model without knowing the group of a new sample,
    y = sum_q (s_q / n) v_q^T x.
    """
    if model.variant != ModelVariant.SAMPLE:
        raise NameError(f"Weighted prediction needs a SAMPLE model! {model.variant.value}")
    return model.predict(X)


def weight_error(w_hat: np.ndarray, w_star: np.ndarray) -> float:
    """
    ||w* - w_hat||_2.
    """
    w_hat = np.asarray(w_hat, dtype=float).ravel()
    w_star = np.asarray(w_star, dtype=float).ravel()
    if w_hat.shape != w_star.shape:
        raise DimensionError(f"Weights of shapes {w_hat.shape} and {w_star.shape}.")
    return float(np.linalg.norm(w_star - w_hat))


def prediction_mse(dataset: Dataset, predictions: np.ndarray) -> float:
    """
    Mean squared error 1/n sum_i (y_i - y_hat_i)^2.
    """
    predictions = np.asarray(predictions, dtype=float)
    if predictions.shape != dataset.y.shape:
        raise DimensionError(f"Predictions of shape {predictions.shape} for labels "
                             f"{dataset.y.shape}.")
    return float(np.mean((dataset.y - predictions) ** 2))
