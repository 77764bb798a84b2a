"""
This file contains the multitask penalty on clustered task predictors.
"""
from dataclasses import dataclass
from math import isfinite
from typing import Tuple

import numpy as np

from ..exceptions import DimensionError
from ..models.partition import Partition


@dataclass(frozen=True)
class MultitaskPenaltyParams:
    """
    :param lambda_mean: Weight on the mean of the task predictors.
    :param lambda_between: Weight on the variance between clusters.
    :param lambda_within: Weight on the variance within clusters.
    :param n_tasks: Number of tasks K.
    """
    lambda_mean: float
    lambda_between: float
    lambda_within: float
    n_tasks: int

    def __post_init__(self):
        if self.n_tasks < 1:
            raise ValueError(f"At least one task is needed! {self.n_tasks}")
        for name in ("lambda_mean", "lambda_between", "lambda_within"):
            value = getattr(self, name)
            if not isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and nonnegative! {value}")


def _centering(n_tasks: int) -> np.ndarray:
    """Pi = I - 11^T / K."""
    return np.eye(n_tasks) - np.full((n_tasks, n_tasks), 1.0 / n_tasks)


def _check(W, W_tilde, params):
    W = np.asarray(W, dtype=float)
    W_tilde = np.asarray(W_tilde, dtype=float)
    if W.shape != W_tilde.shape or W.ndim != 2 or W.shape[1] != params.n_tasks:
        raise DimensionError(
            f"W {W.shape} and W_tilde {W_tilde.shape} must both be d x {params.n_tasks}.")
    return W, W_tilde


def multitask_penalty(W: np.ndarray, W_tilde: np.ndarray,
                      params: MultitaskPenaltyParams) -> float:
    """
    lM/2 Tr(W~ (I - Pi) W~^T) + lB/2 Tr(W~ Pi W~^T) + lW/2 ||W - W~||_F^2.
    """
    W, W_tilde = _check(W, W_tilde, params)
    pi = _centering(params.n_tasks)
    mean = np.trace(W_tilde @ (np.eye(params.n_tasks) - pi) @ W_tilde.T)
    between = np.trace(W_tilde @ pi @ W_tilde.T)
    within = np.sum((W - W_tilde) ** 2)
    return float(0.5 * (params.lambda_mean * mean + params.lambda_between * between
                        + params.lambda_within * within))


def multitask_penalty_grad(W: np.ndarray, W_tilde: np.ndarray,
                           params: MultitaskPenaltyParams) -> Tuple[np.ndarray, np.ndarray]:
    """
    :return: The gradients of the penalty in W and in W_tilde.
    """
    W, W_tilde = _check(W, W_tilde, params)
    pi = _centering(params.n_tasks)
    residual = W - W_tilde
    grad_W = params.lambda_within * residual
    grad_W_tilde = (params.lambda_mean * W_tilde @ (np.eye(params.n_tasks) - pi)
                    + params.lambda_between * W_tilde @ pi
                    - params.lambda_within * residual)
    return grad_W, grad_W_tilde


def multitask_penalty_decomposed(W: np.ndarray, W_tilde: np.ndarray, partition: Partition,
                                 params: MultitaskPenaltyParams) -> float:
    """
    The same penalty written with barycenters: K ||v_bar||^2 for the mean, the size
    weighted spread of the cluster predictors v_q around v_bar, and the distance of each
    task predictor to its cluster predictor.
    """
    W, W_tilde = _check(W, W_tilde, params)
    if partition.n_items != params.n_tasks:
        raise DimensionError("The partition must cover the tasks.")
    centers = np.column_stack([W_tilde[:, list(group)].mean(axis=1)
                               for group in partition.groups])
    sizes = partition.sizes
    v_bar = centers @ sizes / params.n_tasks
    omega_mean = params.n_tasks * float(v_bar @ v_bar)
    omega_between = float(np.sum(sizes * np.sum((centers - v_bar[:, None]) ** 2, axis=0)))
    omega_within = sum(float(np.sum((W[:, list(group)] - centers[:, [q]]) ** 2))
                       for q, group in enumerate(partition.groups))
    return 0.5 * (params.lambda_mean * omega_mean + params.lambda_between * omega_between
                  + params.lambda_within * omega_within)
