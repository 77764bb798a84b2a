"""
This file contains the empirical check of the projected gradient error bound
||w* - w_t|| <= rho^t ||w*|| + nu ||eta|| (1 - rho^t) / (1 - rho).
"""
import logging
from typing import NamedTuple, Optional, Tuple

import numpy as np

from .contraction import ContractionEstimate, contraction_constants
from ..exceptions import DivergenceError
from ..models.clustered import ModelVariant
from ..models.dataset import Dataset
from ..models.hyperparams import Hyperparams
from ..solvers.projected_gradient import PGDConfig, pgd_fit

logger = logging.getLogger(__name__)


class ConvergenceReport(NamedTuple):
    rho: float
    nu: float
    noise_norm: float
    errors: Tuple[float, ...]
    bounds: Tuple[float, ...]
    violations: int
    margin: float
    vacuous: bool
    diverged: bool

    def to_dict(self) -> dict:
        return {
            "rho": float(self.rho),
            "nu": float(self.nu),
            "noise_norm": float(self.noise_norm),
            "errors": [float(v) for v in self.errors],
            "bounds": [float(v) for v in self.bounds],
            "violations": int(self.violations),
            "margin": float(self.margin),
            "vacuous": bool(self.vacuous),
            "diverged": bool(self.diverged),
        }


def error_bound(rho: float, nu: float, w_norm: float, noise_norm: float, t: int) -> float:
    """
    rho^t ||w*|| + nu ||eta|| sum_{s < t} rho^s.
    """
    geometric = float(t) if rho == 1.0 else (1.0 - rho ** t) / (1.0 - rho)
    return rho ** t * w_norm + nu * noise_norm * geometric


def verify_convergence_bound(X: np.ndarray, w_star: np.ndarray, sigma: float, n_clusters: int,
                             n_iter: int, seed: int = 0,
                             estimate: Optional[ContractionEstimate] = None,
                             n_jobs: Optional[int] = None) -> ConvergenceReport:
    """
    Run projected gradient with unit steps, no ridge and w_0 = 0 on y = X w* + eta,
    eta ~ N(0, sigma^2 I), and compare ||w* - w_t|| with the bound at every t.
    A bound with rho >= 1 is vacuous: it is reported, not counted as a failure.

    :param X: Design matrix n x d.
    :param w_star: The true weights, with at most Q distinct values.
    :param sigma: Noise standard deviation.
    :param n_clusters: Number of groups Q.
    :param n_iter: Number of iterations T.
    :param seed: Seed of the noise.
    :param estimate: Precomputed contraction constants of X, computed when None.
    :param n_jobs: Joblib workers of the contraction constants.
    :return: A ConvergenceReport.
    """
    X = np.asarray(X, dtype=float)
    w_star = np.asarray(w_star, dtype=float).ravel()
    if np.unique(w_star).shape[0] > n_clusters:
        raise ValueError(f"w* takes more than Q = {n_clusters} distinct values.")
    if estimate is None:
        estimate = contraction_constants(X, n_clusters, seed=seed, n_jobs=n_jobs)

    rng = np.random.default_rng(seed)
    eta = sigma * rng.standard_normal(X.shape[0])
    dataset = Dataset(X=X, y=X @ w_star + eta)
    config = PGDConfig(variant=ModelVariant.FEATURE, theory_mode=True, init="ZEROS",
                       record_iterates=True,
                       hyperparams=Hyperparams(n_clusters=n_clusters, lam=0.0, epsilon=0.0,
                                               max_iter=n_iter, seed=seed))
    diverged = False
    try:
        _, report = pgd_fit(dataset, config)
    except DivergenceError as error:
        logger.warning("Projected gradient diverged: %s", error)
        report = error.report
        diverged = True

    rho, nu = estimate.rho, estimate.nu
    w_norm, noise_norm = float(np.linalg.norm(w_star)), float(np.linalg.norm(eta))
    errors = tuple(float(np.linalg.norm(w_star - w)) for w in report.iterates)
    bounds = tuple(error_bound(rho, nu, w_norm, noise_norm, t) for t in range(len(errors)))
    gaps = np.array(bounds) - np.array(errors)
    vacuous = rho >= 1.0
    violations = 0 if vacuous else int(np.sum(gaps < -1e-9 * (1.0 + np.array(bounds))))
    if vacuous:
        logger.warning("rho = %.4f >= 1: the bound is vacuous.", rho)
    return ConvergenceReport(rho=rho, nu=nu, noise_norm=noise_norm, errors=errors,
                             bounds=bounds, violations=violations, margin=float(gaps.min()),
                             vacuous=vacuous, diverged=diverged)
