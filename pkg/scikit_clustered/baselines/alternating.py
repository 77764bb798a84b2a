"""
This file contains alternating minimization for sample clustering (clusterwise regression).
"""
import logging
from typing import NamedTuple, Optional, Tuple

import numpy as np
from scipy import linalg

from ..exceptions import DimensionError
from ..losses.objective import sample_clustered_objective
from ..models.dataset import Dataset
from ..models.partition import Partition

logger = logging.getLogger(__name__)


class AlternatingResult(NamedTuple):
    experts: np.ndarray
    partition: Partition
    objective_trace: Tuple[float, ...]
    iterations: int


def _fit_experts(X: np.ndarray, y: np.ndarray, labels: np.ndarray, n_clusters: int,
                 lam: float) -> np.ndarray:
    """
    Ridge expert of every group: (X_q^T X_q + n lam s_q I) v_q = X_q^T y_q. Empty groups
    keep a zero expert.
    """
    n, d = X.shape
    V = np.zeros((d, n_clusters))
    for q in range(n_clusters):
        members = labels == q
        if not members.any():
            continue
        X_q, y_q = X[members], y[members]
        if lam > 0:
            gram = X_q.T @ X_q + n * lam * members.sum() * np.eye(d)
            V[:, q] = linalg.solve(gram, X_q.T @ y_q, assume_a="pos")
        else:
            V[:, q] = linalg.lstsq(X_q, y_q)[0]
    return V


def _costs(X: np.ndarray, y: np.ndarray, V: np.ndarray, lam: float) -> np.ndarray:
    n = X.shape[0]
    return 0.5 * (y[:, None] - X @ V) ** 2 / n + 0.5 * lam * np.sum(V ** 2, axis=0)


def _reseed_empty(costs: np.ndarray, labels: np.ndarray, n_clusters: int) -> np.ndarray:
    labels = labels.copy()
    sizes = np.bincount(labels, minlength=n_clusters)
    rows = np.arange(labels.shape[0])
    for q in np.flatnonzero(sizes == 0):
        current = costs[rows, labels].copy()
        current[sizes[labels] <= 1] = -np.inf
        worst = int(np.argmax(current))
        logger.warning("Empty sample group %d reseeded with sample %d.", q, worst)
        sizes[labels[worst]] -= 1
        labels[worst] = q
        sizes[q] = 1
    return labels


def fit_alternating_sample(dataset: Dataset, n_clusters: int, lam: float = 0.0, seed: int = 0,
                           init_partition: Optional[Partition] = None,
                           max_iter: int = 100) -> AlternatingResult:
    """
    Alternate between fitting one ridge expert per sample group and moving each sample to
    the group whose expert fits it best, for
    (1/n) sum_i 1/2 (y_i - v_{g(i)}^T x_i)^2 + lam/2 sum_q s_q ||v_q||^2.

    A sample only moves for a strictly smaller cost, so the objective never increases and
    the loop stops once no sample moves.

    :param dataset: The training Dataset with a label vector.
    :param n_clusters: The number of sample groups Q.
    :param lam: Ridge weight.
    :param seed: Seed of the balanced random initial partition.
    :param init_partition: Starting partition, e.g. the output of projected gradient.
    :param max_iter: Maximum number of alternations.
    :return: An AlternatingResult; experts is d x Q' in the partition's group order.
    """
    if dataset.y.ndim != 1:
        raise DimensionError("Alternating minimization needs a label vector.")
    if lam < 0:
        raise ValueError(f"lam must be nonnegative! {lam}")
    X, y = dataset.X, dataset.y
    n = X.shape[0]
    if not 1 <= n_clusters <= n:
        raise ValueError(f"The number of clusters must be in [1, {n}]! {n_clusters}")

    if init_partition is not None:
        if init_partition.n_items != n:
            raise DimensionError(f"The partition covers {init_partition.n_items} samples.")
        labels = init_partition.labels()
        n_clusters = max(init_partition.n_groups, n_clusters)
    else:
        rng = np.random.default_rng(seed)
        labels = rng.permutation(n) % n_clusters

    trace = []
    iterations = 0
    rows = np.arange(n)
    V = _fit_experts(X, y, labels, n_clusters, lam)
    if np.bincount(labels, minlength=n_clusters).min() == 0:
        labels = _reseed_empty(_costs(X, y, V, lam), labels, n_clusters)
        V = _fit_experts(X, y, labels, n_clusters, lam)
    while iterations < max_iter:
        iterations += 1
        costs = _costs(X, y, V, lam)
        best = np.argmin(costs, axis=1)
        move = costs[rows, best] < costs[rows, labels]
        labels = np.where(move, best, labels)
        labels = _reseed_empty(costs, labels, n_clusters)
        V = _fit_experts(X, y, labels, n_clusters, lam)
        partition = Partition.from_labels(labels)
        experts = V[:, [labels[group[0]] for group in partition.groups]]
        trace.append(sample_clustered_objective(dataset, experts, partition, lam))
        logger.debug("Alternation %d: objective %.10e", iterations, trace[-1])
        if not move.any():
            break

    partition = Partition.from_labels(labels)
    experts = V[:, [labels[group[0]] for group in partition.groups]]
    logger.info("Alternating minimization stopped after %d alternations.", iterations)
    return AlternatingResult(experts=experts, partition=partition,
                             objective_trace=tuple(trace), iterations=iterations)
