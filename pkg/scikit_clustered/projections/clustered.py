"""
This file contains the Euclidean projection on clustered vectors and matrices.
"""
from typing import Optional

import numpy as np

from ..clustering.kmeans_1d import kmeans_1d_exact
from ..clustering.kmeans_pp import kmeans_pp
from ..exceptions import UnsupportedModeError
from ..models.partition import partition_to_assignment
from ..models.results import ClusteredProjection

MODES = ("EXACT_1D", "KMEANSPP")


def project_clustered(W, n_clusters: int, mode: str = "EXACT_1D", seed: int = 0,
                      n_init: int = 5, n_jobs: Optional[int] = None) -> ClusteredProjection:
    """
    Projection of the rows of W on matrices with at most Q distinct rows,
    argmin_{Z, V} ||W - Z V||_F, which is a k-means problem on the rows.

    :param W: m x p matrix, one item per row. A vector is read as p = 1.
    :param n_clusters: The maximum number of groups Q.
    :param mode: EXACT_1D (dynamic program, p = 1 only, global optimum) or KMEANSPP
        (k-means++ with Lloyd refinement, local optimum).
    :param seed: Seed of the KMEANSPP restarts.
    :param n_init: Number of KMEANSPP restarts.
    :param n_jobs: Joblib workers for the KMEANSPP restarts.
    :return: A ClusteredProjection; projected has the shape of W.
    """
    mode = str(mode).upper().replace("-", "_")
    if mode not in MODES:
        raise NameError(f"Projection mode not found! {mode}")
    W = np.asarray(W, dtype=float)
    points = W.reshape(-1, 1) if W.ndim == 1 else W

    if mode == "EXACT_1D":
        if points.shape[1] != 1:
            raise UnsupportedModeError(
                f"EXACT_1D clusters scalars only, got points in R^{points.shape[1]}.")
        result = kmeans_1d_exact(points[:, 0], n_clusters)
    else:
        result = kmeans_pp(points, n_clusters, seed=seed, n_init=n_init, n_jobs=n_jobs)

    assignment = partition_to_assignment(result.partition)
    projected = (assignment.Z @ result.centroids).reshape(W.shape)
    return ClusteredProjection(assignment=assignment, centroids=result.centroids,
                               projected=projected, partition=result.partition,
                               distance2=float(np.sum((W - projected) ** 2)))
