"""
This file contains k-means with k-means++ seeding and Lloyd refinement.
"""
import logging
from typing import Optional

import numpy as np
from joblib import Parallel, delayed
from sklearn.cluster import kmeans_plusplus

from ..models.partition import Partition
from ..models.results import KMeansResult

logger = logging.getLogger(__name__)


def _squared_distances(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    return np.sum((points[:, None, :] - centers[None, :, :]) ** 2, axis=2)


def _update_centers(points: np.ndarray, labels: np.ndarray, n_clusters: int,
                    centers: np.ndarray) -> np.ndarray:
    """
    Move each center to the mean of its points. An empty cluster takes over the point
    farthest from its own center.
    """
    centers = centers.copy()
    for q in range(n_clusters):
        members = labels == q
        if members.any():
            centers[q] = points[members].mean(axis=0)
    sizes = np.bincount(labels, minlength=n_clusters)
    for q in np.flatnonzero(sizes == 0):
        spread = np.sum((points - centers[labels]) ** 2, axis=1)
        spread[sizes[labels] <= 1] = -1.0
        far = int(np.argmax(spread))
        logger.warning("Empty cluster %d reseeded with point %d.", q, far)
        sizes[labels[far]] -= 1
        old = labels[far]
        labels[far] = q
        sizes[q] = 1
        centers[q] = points[far]
        centers[old] = points[labels == old].mean(axis=0)
    return centers


def _cost(points: np.ndarray, labels: np.ndarray, centers: np.ndarray) -> float:
    return float(np.sum((points - centers[labels]) ** 2))


def _lloyd(points: np.ndarray, n_clusters: int, seed_sequence: np.random.SeedSequence,
           max_iter: int):
    """
    One restart: D^2 seeding then Lloyd iterations until the labels stop changing.
    A point leaves its cluster only for a strictly closer center, so the cost never
    increases.
    """
    random_state = int(seed_sequence.generate_state(1)[0] % (2 ** 31 - 1))
    centers, _ = kmeans_plusplus(points, n_clusters=n_clusters, random_state=random_state)
    centers = np.asarray(centers, dtype=float)

    labels = np.argmin(_squared_distances(points, centers), axis=1)
    centers = _update_centers(points, labels, n_clusters, centers)
    trace = [_cost(points, labels, centers)]
    iterations = 0
    rows = np.arange(points.shape[0])
    while iterations < max_iter:
        iterations += 1
        distances = _squared_distances(points, centers)
        best = np.argmin(distances, axis=1)
        move = distances[rows, best] < distances[rows, labels]
        changed = bool(move.any())
        labels = np.where(move, best, labels)
        centers = _update_centers(points, labels, n_clusters, centers)
        trace.append(_cost(points, labels, centers))
        if not changed:
            break
    return labels, trace, iterations


def kmeans_pp(points, n_clusters: int, seed: int = 0, n_init: int = 5, max_iter: int = 100,
              n_jobs: Optional[int] = None) -> KMeansResult:
    """
    k-means++ seeding followed by Lloyd iterations, best of n_init restarts.

    Restart r draws from the r-th child of SeedSequence(seed), and the best restart is
    chosen by (cost, r), so the result does not depend on n_jobs.

    :param points: m points, an m x p array (a vector is read as m points in R^1).
    :param n_clusters: The maximum number of clusters Q.
    :param seed: The random seed.
    :param n_init: Number of restarts.
    :param max_iter: Maximum Lloyd iterations per restart.
    :param n_jobs: Joblib workers for the restarts.
    :return: A KMeansResult. With at most Q distinct points, one cluster per distinct point.
    """
    P = np.asarray(points, dtype=float)
    if P.ndim == 1:
        P = P[:, None]
    if P.shape[0] == 0:
        raise ValueError("kmeans_pp needs at least one point.")
    if n_clusters < 1:
        raise ValueError(f"The number of clusters must be at least 1! {n_clusters}")
    if n_init < 1:
        raise ValueError(f"At least one restart is needed! {n_init}")

    distinct, inverse = np.unique(P, axis=0, return_inverse=True)
    if distinct.shape[0] <= n_clusters:
        partition = Partition.from_labels(np.asarray(inverse).ravel())
        centroids = np.array([P[group[0]] for group in partition.groups])
        return KMeansResult(partition=partition, centroids=centroids, cost=0.0,
                            iterations=0, cost_trace=(0.0,))

    children = np.random.SeedSequence(seed).spawn(n_init)
    runs = Parallel(n_jobs=n_jobs)(
        delayed(_lloyd)(P, n_clusters, child, max_iter) for child in children
    )
    best = min(range(n_init), key=lambda r: (runs[r][1][-1], r))
    labels, trace, iterations = runs[best]

    partition = Partition.from_labels(labels)
    centroids = np.array([P[list(group)].mean(axis=0) for group in partition.groups])
    cost = float(sum(np.sum((P[list(group)] - centroids[q]) ** 2)
                     for q, group in enumerate(partition.groups)))
    return KMeansResult(partition=partition, centroids=centroids, cost=cost,
                        iterations=iterations, cost_trace=tuple(trace))
