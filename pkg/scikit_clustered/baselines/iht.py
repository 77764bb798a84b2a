"""
This file contains iterative hard thresholding, the sparse baseline without clustering.
"""
from typing import Optional, Tuple

import numpy as np

from ..exceptions import DimensionError
from ..losses.accessible import VECTOR_LOSSES, check_loss_kind, default_loss_kind
from ..losses.objective import smooth_objective
from ..models.dataset import Dataset
from ..models.hyperparams import Hyperparams
from ..projections.sparse import project_ksparse
from ..solvers.basesolver import SolverReport
from ..solvers.projected_gradient import PGDConfig, projected_gradient


def fit_iht(dataset: Dataset, sparsity: int, lam: float = 0.0, max_iter: int = 500,
            epsilon: float = 1e-8, loss: Optional[str] = None,
            warm_start: Optional[np.ndarray] = None) -> Tuple[np.ndarray, SolverReport]:
    """
    Projected gradient with the k-sparse projection, started from zero.

    :param dataset: The training Dataset with a label vector.
    :param sparsity: The number of nonzeros k.
    :param lam: Ridge weight.
    :param max_iter: Iteration budget.
    :param epsilon: Stopping tolerance on the objective decrease.
    :param loss: SQUARED or LOGISTIC; defaults to the task's loss.
    :param warm_start: Optional starting weights.
    :return: The k-sparse weights and the SolverReport.
    """
    kind = check_loss_kind(loss or default_loss_kind(dataset), dataset.y)
    if kind not in VECTOR_LOSSES:
        raise DimensionError("Iterative hard thresholding needs a label vector.")
    hyperparams = Hyperparams(n_clusters=1, sparsity=max(int(sparsity), 1), lam=lam,
                              epsilon=epsilon, max_iter=max_iter)
    config = PGDConfig(hyperparams=hyperparams,
                       init="ZEROS" if warm_start is None else "WARM", warm_start=warm_start)
    X, y = dataset.X, dataset.y
    x0 = np.zeros(dataset.n_features) if warm_start is None else \
        np.asarray(warm_start, dtype=float)

    def value_grad(w):
        value, grad, _ = smooth_objective(kind, X, y, w, lam)
        return value, grad

    def project(w, t):
        return project_ksparse(w, sparsity).w

    return projected_gradient(value_grad, project, x0, config)
