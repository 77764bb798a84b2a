"""
This file contains the k-fold cross-validation of the hyperparameters of a method.
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import NamedTuple, Optional, Tuple

import numpy as np
from joblib import Parallel, delayed
from pandas import DataFrame
from scipy.linalg import LinAlgError
from sklearn.model_selection import KFold

from .methods import fit_method, method, score_fit
from ..exceptions import CrossValidationError, DivergenceError, IllConditionedError
from ..models.dataset import Dataset

logger = logging.getLogger(__name__)

FIT_FAILURES = (DivergenceError, IllConditionedError, LinAlgError, ValueError)


@dataclass(frozen=True)
class CVConfig:
    """
    :param folds: Number of folds, at least 2.
    :param lambdas: Grid of ridge weights, logarithmic by default.
    :param n_clusters: Grid of Q.
    :param sparsity: Grid of k, (None,) for methods without sparsity.
    :param metric: MSE, MSE_SAMPLES or None for the method's default.
    """
    folds: int = 5
    lambdas: Tuple[float, ...] = tuple(np.logspace(-4, 2, 7))
    n_clusters: Tuple[int, ...] = (2,)
    sparsity: Tuple[Optional[int], ...] = (None,)
    metric: Optional[str] = None

    def __post_init__(self):
        if self.folds < 2:
            raise ValueError(f"At least two folds are needed! {self.folds}")
        lambdas = tuple(sorted({float(lam) for lam in self.lambdas}))
        n_clusters = tuple(sorted({int(q) for q in self.n_clusters}))
        sparsity = tuple(sorted({k for k in self.sparsity}, key=lambda k: -1 if k is None else k))
        if not lambdas or not n_clusters or not sparsity:
            raise ValueError("Every grid needs at least one value.")
        if any(lam < 0 for lam in lambdas):
            raise ValueError(f"Ridge weights must be nonnegative! {lambdas}")
        object.__setattr__(self, "lambdas", lambdas)
        object.__setattr__(self, "n_clusters", n_clusters)
        object.__setattr__(self, "sparsity", sparsity)

    def grid(self):
        """Grid points (lam, Q, k) in lexicographic order."""
        return list(product(self.lambdas, self.n_clusters, self.sparsity))


class CVResult(NamedTuple):
    method: str
    lam: float
    n_clusters: int
    sparsity: Optional[int]
    score: float
    scores: DataFrame

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "best": {"lambda": float(self.lam), "n_clusters": int(self.n_clusters),
                     "sparsity": None if self.sparsity is None else int(self.sparsity)},
            "score": float(self.score),
            "grid": [{"lambda": float(row.LAMBDA), "n_clusters": int(row.N_CLUSTERS),
                      "sparsity": None if np.isnan(row.SPARSITY) else int(row.SPARSITY),
                      "mean": None if np.isnan(row.MEAN) else float(row.MEAN),
                      "failures": int(row.FAILURES)}
                     for row in self.scores.itertuples()],
        }


def _fold_score(name, dataset: Dataset, train_ix, test_ix, point, metric, seed) -> float:
    lam, n_clusters, sparsity = point
    try:
        fit = fit_method(name, dataset.subset(train_ix), lam=lam, n_clusters=n_clusters,
                         sparsity=sparsity, seed=seed)
        return score_fit(fit, dataset.subset(test_ix), metric)
    except FIT_FAILURES as error:
        logger.warning("%s failed at lambda=%g, Q=%d, k=%s: %s", name, lam, n_clusters,
                       sparsity, error)
        return np.nan


def cross_validate(dataset: Dataset, method_name, config: CVConfig = CVConfig(), seed: int = 0,
                   n_jobs: Optional[int] = None) -> CVResult:
    """
    Mean validation score of every grid point over shuffled k folds. The first grid point
    with the smallest mean wins, so ties go to the smallest lambda, then Q, then k.

    :param dataset: The Dataset.
    :param method_name: A method name, see experiments.methods.
    :param config: The CVConfig.
    :param seed: Seed of the fold split and of the fits.
    :param n_jobs: Joblib workers over the (grid point, fold) fits.
    :return: A CVResult.
    """
    name = method(method_name)
    if config.folds > dataset.n_samples:
        raise ValueError(f"More folds ({config.folds}) than samples ({dataset.n_samples}).")
    splits = list(KFold(n_splits=config.folds, shuffle=True,
                        random_state=seed).split(dataset.X))
    grid = config.grid()
    scores = Parallel(n_jobs=n_jobs)(
        delayed(_fold_score)(name, dataset, train_ix, test_ix, point, config.metric, seed)
        for point in grid for train_ix, test_ix in splits
    )
    scores = np.array(scores, dtype=float).reshape(len(grid), config.folds)
    failures = np.isnan(scores).sum(axis=1)
    means = np.full(len(grid), np.nan)
    valid = failures < config.folds
    means[valid] = np.nanmean(scores[valid], axis=1)
    if not valid.any():
        raise CrossValidationError(name.value)

    table = DataFrame({
        "LAMBDA": [point[0] for point in grid],
        "N_CLUSTERS": [point[1] for point in grid],
        "SPARSITY": [np.nan if point[2] is None else point[2] for point in grid],
        "MEAN": means,
        "FAILURES": failures,
    })
    best = int(np.nanargmin(means))
    lam, n_clusters, sparsity = grid[best]
    logger.info("Cross-validation of %s: lambda=%g, Q=%d, k=%s.", name.value, lam, n_clusters,
                sparsity)
    return CVResult(method=name.value, lam=lam, n_clusters=n_clusters, sparsity=sparsity,
                    score=float(means[best]), scores=table)
