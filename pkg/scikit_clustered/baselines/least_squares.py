"""
This file contains the least-squares baselines: ridge regression and ridge followed by
k-means on the weights.
"""
import numpy as np
from scipy import linalg

from ..models.clustered import ClusteredLinearModel, ModelVariant
from ..models.dataset import Dataset
from ..projections.clustered import project_clustered


def fit_ls(dataset: Dataset, lam: float = 0.0) -> np.ndarray:
    """
    w = argmin 1/(2n) ||Xw - y||^2 + lam/2 ||w||^2, i.e. (X^T X + n lam I) w = X^T y.

    :param dataset: The Dataset; a label matrix gives one column of weights per output.
    :param lam: Ridge weight. With lam = 0 the minimum-norm solution is returned.
    :return: The weights, d or d x K.
    """
    if lam < 0:
        raise ValueError(f"lam must be nonnegative! {lam}")
    X, y = dataset.X, dataset.y
    n, d = X.shape
    if lam > 0:
        return linalg.solve(X.T @ X + n * lam * np.eye(d), X.T @ y, assume_a="pos")
    return linalg.lstsq(X, y)[0]


def fit_lsk(dataset: Dataset, n_clusters: int, lam: float = 0.0,
            seed: int = 0) -> ClusteredLinearModel:
    """
    Ridge weights quantized by k-means; the centroids become the shared weights.
    Scalar weights use the exact 1-D k-means, weight rows (multiclass) use k-means++.

    :param dataset: The Dataset.
    :param n_clusters: The maximum number of feature groups Q.
    :param lam: Ridge weight.
    :param seed: Seed of the k-means++ restarts.
    :return: A FEATURE or FEATURE_MULTICLASS ClusteredLinearModel.
    """
    w = fit_ls(dataset, lam)
    if w.ndim == 1:
        projection = project_clustered(w, n_clusters, mode="EXACT_1D")
        return ClusteredLinearModel(variant=ModelVariant.FEATURE, partition=projection.partition,
                                    values=projection.centroids[:, 0])
    projection = project_clustered(w, n_clusters, mode="KMEANSPP", seed=seed)
    return ClusteredLinearModel(variant=ModelVariant.FEATURE_MULTICLASS,
                                partition=projection.partition, values=projection.centroids)
