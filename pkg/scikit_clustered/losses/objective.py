"""
This file contains the regularized empirical risks and their gradients.
"""
from typing import Optional, Tuple

import numpy as np

from .accessible import LossKind, VECTOR_LOSSES, check_loss_kind, loss_funcs
from ..exceptions import DimensionError
from ..models.dataset import Dataset
from ..models.partition import Partition


def smooth_objective(kind, X: np.ndarray, y: np.ndarray, W: np.ndarray, lam: float,
                     intercept=None) -> Tuple[float, np.ndarray, Optional[np.ndarray]]:
    """
    (1/n) sum_i loss(y_i, W^T x_i + b) + lam/2 ||W||^2 and its gradients.

    :param kind: The LossKind.
    :param X: Design matrix n x d.
    :param y: Label vector, or label matrix for the multiclass kinds.
    :param W: Weight vector d, or d x K matrix for the multiclass kinds.
    :param lam: Ridge weight. The intercept is never penalized.
    :param intercept: Optional scalar (or K vector) intercept.
    :return: The objective, its gradient in W and its gradient in the intercept (None
        without intercept).
    """
    kind = check_loss_kind(kind, y)
    if lam < 0:
        raise ValueError(f"lam must be nonnegative! {lam}")
    n, d = X.shape
    W = np.asarray(W, dtype=float)
    if W.shape[0] != d or (W.ndim == 2) != (y.ndim == 2) or \
            (W.ndim == 2 and W.shape[1] != y.shape[1]):
        raise DimensionError(f"Weights of shape {W.shape} do not fit X {X.shape}, y {y.shape}.")

    loss, derivative = loss_funcs(kind)
    scores = X @ W
    if intercept is not None:
        scores = scores + intercept
    value = float(np.sum(loss(y, scores))) / n + 0.5 * lam * float(np.sum(W ** 2))
    dscores = derivative(y, scores) / n
    grad = X.T @ dscores + lam * W
    grad_intercept = None if intercept is None else dscores.sum(axis=0)
    return value, grad, grad_intercept


def loss_value_grad(kind, dataset: Dataset, W: np.ndarray, lam: float,
                    intercept=None) -> Tuple[float, np.ndarray]:
    """
    L(y, X, W) + R(W) and its gradient in W. For the squared loss and a single w the
    gradient is (1/n) X^T (Xw - y) + lam w.
    """
    value, grad, _ = smooth_objective(kind, dataset.X, dataset.y, W, lam, intercept)
    return value, grad


def per_sample_value_grad(kind, dataset: Dataset, W: np.ndarray,
                          lam: float) -> Tuple[float, np.ndarray]:
    """
    Objective of the per-sample predictors of sample clustering,
    (1/n) sum_i loss(y_i, w_i^T x_i) + lam/2 sum_i ||w_i||^2, with W = (w_1 .. w_n) of
    shape d x n. The gradient is columnwise.
    """
    kind = check_loss_kind(kind, dataset.y)
    if kind not in VECTOR_LOSSES:
        raise DimensionError("Sample clustering needs a label vector.")
    X, y = dataset.X, dataset.y
    n, d = X.shape
    if W.shape != (d, n):
        raise DimensionError(f"Per-sample predictors must be {(d, n)}! {W.shape}")
    loss, derivative = loss_funcs(kind)
    scores = np.einsum("ij,ji->i", X, W)
    value = float(np.sum(loss(y, scores))) / n + 0.5 * lam * float(np.sum(W ** 2))
    grad = (X * (derivative(y, scores) / n)[:, None]).T + lam * W
    return value, grad


def sample_clustered_objective(dataset: Dataset, V: np.ndarray, partition: Partition,
                               lam: float, kind=LossKind.SQUARED) -> float:
    """
    (1/n) sum_q sum_{i in G_q} loss(y_i, v_q^T x_i) + lam/2 sum_q s_q ||v_q||^2.

    :param dataset: The Dataset with a label vector.
    :param V: Experts, d x Q, one column per group in the partition's order.
    :param partition: Partition of the n samples.
    :param lam: Ridge weight.
    :param kind: SQUARED or LOGISTIC.
    :return: The objective value.
    """
    kind = check_loss_kind(kind, dataset.y)
    n = dataset.n_samples
    V = np.asarray(V, dtype=float)
    if partition.n_items != n:
        raise DimensionError(f"The partition covers {partition.n_items} samples, not {n}.")
    if V.ndim != 2 or V.shape != (dataset.n_features, partition.n_groups):
        raise DimensionError(f"Experts must be d x Q! {V.shape}")
    loss, _ = loss_funcs(kind)
    labels = partition.labels()
    scores = np.einsum("ij,ji->i", dataset.X, V[:, labels])
    penalty = float(np.sum(partition.sizes * np.sum(V ** 2, axis=0)))
    return float(np.sum(loss(dataset.y, scores))) / n + 0.5 * lam * penalty
