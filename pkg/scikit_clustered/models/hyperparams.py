"""
This file contains the hyperparameters shared by every solver.
"""
from dataclasses import dataclass
from math import isfinite
from typing import Optional


@dataclass(frozen=True)
class Hyperparams:
    """
    :param n_clusters: Maximum number of groups Q.
    :param sparsity: Maximum number of nonzero weights k, None when unconstrained.
    :param lam: Ridge weight lambda.
    :param lambda_mean: Multitask penalty weight on the mean of the task predictors.
    :param lambda_between: Multitask penalty weight on the variance between clusters.
    :param lambda_within: Multitask penalty weight on the variance within clusters.
    :param epsilon: Stopping tolerance on the objective decrease.
    :param max_iter: Maximum number of iterations.
    :param seed: Seed of every random draw.
    """
    n_clusters: int = 2
    sparsity: Optional[int] = None
    lam: float = 0.0
    lambda_mean: float = 0.0
    lambda_between: float = 0.0
    lambda_within: float = 0.0
    epsilon: float = 1e-8
    max_iter: int = 500
    seed: int = 0

    def __post_init__(self):
        if self.n_clusters < 1:
            raise ValueError(f"The number of clusters must be at least 1! {self.n_clusters}")
        if self.sparsity is not None and self.sparsity < self.n_clusters:
            raise ValueError(
                f"Sparsity {self.sparsity} below the number of clusters {self.n_clusters}: "
                "the projection would be infeasible."
            )
        for name in ("lam", "lambda_mean", "lambda_between", "lambda_within", "epsilon"):
            value = getattr(self, name)
            if not isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and nonnegative! {value}")
        if self.max_iter < 0:
            raise ValueError(f"max_iter must be nonnegative! {self.max_iter}")
        if self.seed < 0:
            raise ValueError(f"seed must be nonnegative! {self.seed}")
