"""
This file contains the conditional gradient (Frank-Wolfe) solver over the convex hull of the
equivalence matrices, for feature and sample clustering.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from time import perf_counter
from typing import List, NamedTuple, Optional, Tuple, Union

import numpy as np
from scipy import linalg

from .basesolver import BaseSolver, SolverReport
from .projected_gradient import PGDConfig, _step_seed, pgd_fit, refine_sample_model
from ..clustering.kmeans_1d import kmeans_1d_exact
from ..clustering.kmeans_pp import kmeans_pp
from ..exceptions import DimensionError, IllConditionedError
from ..models.clustered import ClusteredLinearModel, ModelVariant
from ..models.dataset import Dataset
from ..models.hyperparams import Hyperparams
from ..models.partition import (EquivalenceMatrix, Partition, partition_to_assignment,
                                partition_to_equivalence)

logger = logging.getLogger(__name__)

ROUNDINGS = ("LAST_ORACLE", "BEST_ORACLE")


class PsiKind(str, Enum):
    FEATURE_REGRESSION = "FEATURE_REGRESSION"
    SAMPLE_REGRESSION = "SAMPLE_REGRESSION"
    FEATURE_CLASSIFICATION = "FEATURE_CLASSIFICATION"
    SAMPLE_CLASSIFICATION = "SAMPLE_CLASSIFICATION"


def psi_kind(kind) -> PsiKind:
    if isinstance(kind, PsiKind):
        return kind
    try:
        return PsiKind[str(kind).upper().replace("-", "_")]
    except KeyError:
        raise NameError(f"Relaxation not found! {kind}") from None


@dataclass(frozen=True, eq=False)
class PsiProblem:
    """
    Convex relaxation of the clustered ridge problem,
    psi(M) = 1/(2n) sum_k y_k^T (I + K(M)/(n lam))^{-1} y_k, with K(M) = X M X^T for feature
    clustering and K(M) = (X X^T) o M for sample clustering. Classification replaces y by
    the one-hot label matrix Y.

    :param kind: The PsiKind.
    :param dataset: The training Dataset.
    :param lam: Ridge weight, strictly positive.
    """
    kind: PsiKind
    dataset: Dataset
    lam: float
    targets: np.ndarray = field(init=False, repr=False)
    gram: Optional[np.ndarray] = field(init=False, repr=False, default=None)

    def __post_init__(self):
        kind = psi_kind(self.kind)
        object.__setattr__(self, "kind", kind)
        if not self.lam > 0:
            raise ValueError(f"The relaxation needs lam > 0! {self.lam}")
        y = self.dataset.y
        if kind in (PsiKind.FEATURE_REGRESSION, PsiKind.SAMPLE_REGRESSION):
            if y.ndim != 1:
                raise DimensionError("Regression relaxations need a label vector.")
            targets = y[:, None]
        else:
            if self.dataset.task != "CLASSIFICATION":
                raise DimensionError("Classification relaxations need a classification Dataset.")
            targets = np.column_stack([1.0 - y, y]) if y.ndim == 1 else y
            if kind == PsiKind.SAMPLE_CLASSIFICATION and targets.shape[1] > 2:
                raise ValueError("Sample clustering for classification supports two classes.")
        object.__setattr__(self, "targets", np.asarray(targets, dtype=float))
        if not self.is_feature:
            X = self.dataset.X
            object.__setattr__(self, "gram", X @ X.T)

    @property
    def is_feature(self) -> bool:
        return self.kind in (PsiKind.FEATURE_REGRESSION, PsiKind.FEATURE_CLASSIFICATION)

    @property
    def n_items(self) -> int:
        """Size m of the equivalence matrices: d for feature clustering, n for samples."""
        return self.dataset.n_features if self.is_feature else self.dataset.n_samples

    def kernel(self, M: np.ndarray) -> np.ndarray:
        M = np.asarray(M, dtype=float)
        if M.shape != (self.n_items, self.n_items):
            raise DimensionError(f"M must be {self.n_items} x {self.n_items}! {M.shape}")
        if self.is_feature:
            X = self.dataset.X
            return X @ M @ X.T
        return self.gram * M


class PsiGradient(NamedTuple):
    """
    P = -grad psi(M) = factor factor^T; factor is d x K (feature) or n x dK (sample).
    """
    P: np.ndarray
    factor: np.ndarray


class RelaxedState(NamedTuple):
    t: int
    psi: float
    gap: float
    partition: Partition
    M: Optional[np.ndarray] = None


def _solve_system(problem: PsiProblem, M: np.ndarray) -> np.ndarray:
    """(I + K(M)/(n lam))^{-1} Y with a Cholesky factorization."""
    n = problem.dataset.n_samples
    A = np.eye(n) + problem.kernel(M) / (n * problem.lam)
    try:
        factor = linalg.cho_factor(A)
    except linalg.LinAlgError:
        raise IllConditionedError("The relaxed system is not positive definite.",
                                  condition=float(np.linalg.cond(A))) from None
    return linalg.cho_solve(factor, problem.targets)


def psi_value(problem: PsiProblem, M: Union[np.ndarray, EquivalenceMatrix],
              solution: Optional[np.ndarray] = None) -> float:
    """
    :param problem: The PsiProblem.
    :param M: A symmetric PSD m x m matrix, usually in the hull of the equivalence matrices.
    :param solution: (I + K(M)/(n lam))^{-1} Y when already computed for this M.
    :return: psi(M).
    """
    M = M.M if isinstance(M, EquivalenceMatrix) else M
    A_inv_y = _solve_system(problem, M) if solution is None else solution
    n = problem.dataset.n_samples
    return float(np.sum(problem.targets * A_inv_y)) / (2 * n)


def psi_gradient(problem: PsiProblem, M: Union[np.ndarray, EquivalenceMatrix],
                 solution: Optional[np.ndarray] = None) -> PsiGradient:
    """
    P = -grad psi(M). With a = (I + K(M)/(n lam))^{-1} y, the feature case gives
    P = b b^T, b = X^T a / (n sqrt(2 lam)), and the sample case
    P = (a a^T) o (X X^T) / (2 n^2 lam) = F F^T, F = diag(a) X / (n sqrt(2 lam)).
    Several label columns add up.

    :param problem: The PsiProblem.
    :param M: A symmetric PSD m x m matrix.
    :param solution: (I + K(M)/(n lam))^{-1} Y when already computed for this M.
    :return: The PsiGradient with P and its factor.
    """
    M = M.M if isinstance(M, EquivalenceMatrix) else M
    A_inv_y = _solve_system(problem, M) if solution is None else solution
    X = problem.dataset.X
    n = X.shape[0]
    scale = n * np.sqrt(2.0 * problem.lam)
    if problem.is_feature:
        factor = X.T @ A_inv_y / scale
    else:
        factor = np.hstack([A_inv_y[:, [k]] * X for k in range(A_inv_y.shape[1])]) / scale
    return PsiGradient(P=factor @ factor.T, factor=factor)


def linear_oracle(gradient, n_clusters: int, seed: int = 0, n_init: int = 5,
                  n_jobs: Optional[int] = None) -> EquivalenceMatrix:
    """
    argmin over equivalence matrices N of <N, grad psi> = -<N, P>, which is k-means on the
    rows of any F with P = F F^T. A single column factor is clustered exactly with the
    1-D dynamic program, otherwise with k-means++.

    :param gradient: A PsiGradient, a rank one factor b (vector) or a PSD matrix P, which
        is factored by eigendecomposition.
    :param n_clusters: The maximum number of groups Q.
    :param seed: Seed of the k-means++ restarts.
    :param n_init: Number of k-means++ restarts.
    :param n_jobs: Joblib workers for the k-means++ restarts.
    :return: The EquivalenceMatrix of the oracle, carrying its partition.
    """
    if isinstance(gradient, PsiGradient):
        factor = gradient.factor
    else:
        array = np.asarray(gradient, dtype=float)
        if array.ndim == 1:
            factor = array[:, None]
        else:
            if array.shape[0] != array.shape[1]:
                raise DimensionError(f"P must be square! {array.shape}")
            eigenvalues, eigenvectors = linalg.eigh((array + array.T) / 2)
            floor = max(float(eigenvalues.max()), 0.0) * 1e-12
            keep = eigenvalues > floor
            factor = eigenvectors[:, keep] * np.sqrt(eigenvalues[keep])
            if factor.shape[1] == 0:
                factor = np.zeros((array.shape[0], 1))
    if factor.shape[1] == 1:
        result = kmeans_1d_exact(factor[:, 0], n_clusters)
    else:
        result = kmeans_pp(factor, n_clusters, seed=seed, n_init=n_init, n_jobs=n_jobs)
    return partition_to_equivalence(result.partition)


def _recover_model(problem: PsiProblem, partition: Partition) -> ClusteredLinearModel:
    """
    Shared weights of the rounded partition: v = (n lam Z^T Z + Z^T X^T X Z)^{-1} Z^T X^T y
    for features, one ridge expert per group for samples. Two-class targets are reduced to
    the contrast of their columns.
    """
    X = problem.dataset.X
    n, d = X.shape
    lam = problem.lam
    targets = problem.targets
    if problem.kind not in (PsiKind.FEATURE_REGRESSION, PsiKind.SAMPLE_REGRESSION) and \
            targets.shape[1] == 2:
        targets = targets[:, [1]] - targets[:, [0]]

    if problem.is_feature:
        Z = partition_to_assignment(partition).Z
        XZ = X @ Z
        system = n * lam * (Z.T @ Z) + XZ.T @ XZ
        values = linalg.solve(system, XZ.T @ targets, assume_a="pos")
        if values.shape[1] == 1:
            return ClusteredLinearModel(variant=ModelVariant.FEATURE, partition=partition,
                                        values=values[:, 0])
        return ClusteredLinearModel(variant=ModelVariant.FEATURE_MULTICLASS,
                                    partition=partition, values=values)

    experts = np.zeros((d, partition.n_groups))
    for q, group in enumerate(partition.groups):
        X_q, y_q = X[list(group)], targets[list(group), 0]
        system = n * lam * len(group) * np.eye(d) + X_q.T @ X_q
        experts[:, q] = linalg.solve(system, X_q.T @ y_q, assume_a="pos")
    return ClusteredLinearModel(variant=ModelVariant.SAMPLE, partition=partition,
                                values=experts)


def _best_oracle(problem: PsiProblem, trace: List[RelaxedState]) -> Partition:
    """Oracle partition of smallest psi, the earliest on ties."""
    scores = {}
    for state in trace:
        if state.partition not in scores:
            scores[state.partition] = psi_value(problem, partition_to_equivalence(state.partition))
    best = min(scores, key=scores.get)
    logger.debug("Best oracle: psi %.10e over %d partitions.", scores[best], len(scores))
    return best


def cg_fit(problem: PsiProblem, n_clusters: int, epsilon: Optional[float] = None,
           max_iter: int = 200, seed: int = 0, n_init: int = 5, record_iterates: bool = False,
           n_jobs: Optional[int] = None,
           rounding: str = "LAST_ORACLE") -> Tuple[ClusteredLinearModel, Partition,
                                                   List[RelaxedState]]:
    """
    Conditional gradient M_{t+1} = M_t + 2/(t+2) (Delta_t - M_t) from the single group
    M_0 = 11^T/m, Delta_t being the linear oracle at M_t. The gap <Delta_t - M_t, P_t>
    bounds psi(M_t) - min psi; the run stops once it is below epsilon. The model is rounded
    on the partition of the last oracle, or with BEST_ORACLE on the oracle partition of
    smallest psi along the run.

    :param problem: The PsiProblem.
    :param n_clusters: The maximum number of groups Q.
    :param epsilon: Gap tolerance, by default 1e-6 psi(M_0).
    :param max_iter: Maximum number of oracle calls.
    :param seed: Seed of the k-means++ oracle.
    :param n_init: k-means++ restarts per oracle call.
    :param record_iterates: Keep M_t in the trace.
    :param n_jobs: Joblib workers for the k-means++ restarts.
    :param rounding: LAST_ORACLE or BEST_ORACLE.
    :return: The rounded model, its partition and the RelaxedState trace.
    """
    if n_clusters < 1:
        raise ValueError(f"The number of clusters must be at least 1! {n_clusters}")
    if max_iter < 1:
        raise ValueError(f"At least one oracle call is needed! {max_iter}")
    rounding = str(rounding).upper().replace("-", "_")
    if rounding not in ROUNDINGS:
        raise NameError(f"Rounding not found! {rounding}")
    m = problem.n_items
    M = np.full((m, m), 1.0 / m)
    trace = []
    delta = None
    for t in range(max_iter):
        solution = _solve_system(problem, M)
        gradient = psi_gradient(problem, M, solution)
        psi = psi_value(problem, M, solution)
        if epsilon is None:
            epsilon = 1e-6 * psi
        delta = linear_oracle(gradient, n_clusters, seed=_step_seed(seed, t), n_init=n_init,
                              n_jobs=n_jobs)
        gap = float(np.sum((delta.M - M) * gradient.P))
        trace.append(RelaxedState(t=t, psi=psi, gap=gap, partition=delta.partition,
                                  M=M.copy() if record_iterates else None))
        logger.debug("Iteration %d: psi %.10e, gap %.3e", t, psi, gap)
        if gap < -1e-8:
            logger.warning("Negative gap %.3e at iteration %d: the k-means oracle is inexact.",
                           gap, t)
        if gap <= epsilon:
            break
        M = M + 2.0 / (t + 2.0) * (delta.M - M)

    logger.info("Conditional gradient stopped after %d oracle calls, gap %.3e.",
                len(trace), trace[-1].gap)
    partition = delta.partition
    if rounding == "BEST_ORACLE":
        partition = _best_oracle(problem, trace)
    return _recover_model(problem, partition), partition, trace


class ConditionalGradient(BaseSolver):
    """
    Conditional gradient solver, to be configured with config() before fit(). The rounded
    model can be refined by projected gradient (warm started) or by alternating
    minimization for sample clustering.
    """
    logger = logging.getLogger(__name__)

    def __init__(self, dataset: Dataset):
        super().__init__(dataset)
        self._settings = None

    def config(self, variant: str = "FEATURE", n_clusters: int = 2, lam: float = 1e-3,
               epsilon: Optional[float] = None, max_iter: int = 200, seed: int = 0,
               n_init: int = 5, record_iterates: bool = False, refine: Optional[str] = None,
               refine_lam: Optional[float] = None, refine_max_iter: int = 500,
               n_jobs: Optional[int] = None, rounding: str = "LAST_ORACLE") -> None:
        """
        Method to config the environment. All variable has default values.

        :param variant: FEATURE or SAMPLE; the relaxation follows the dataset task.
        :param refine: None, PGD or AM.
        :param refine_lam: Ridge weight of the refinement, by default lam.
        :param rounding: LAST_ORACLE or BEST_ORACLE, see cg_fit.
        """
        variant = str(variant).upper().replace("-", "_")
        if variant not in ("FEATURE", "SAMPLE"):
            raise NameError(f"Relaxation not found! {variant}")
        refine = None if refine is None else str(refine).upper()
        if refine not in (None, "PGD", "AM"):
            raise NameError(f"Refinement not found! {refine}")
        if refine == "AM" and variant != "SAMPLE":
            raise NameError("AM refinement needs sample clustering!")
        rounding = str(rounding).upper().replace("-", "_")
        if rounding not in ROUNDINGS:
            raise NameError(f"Rounding not found! {rounding}")
        task = "CLASSIFICATION" if self.dataset.task == "CLASSIFICATION" else "REGRESSION"
        super().env(environment={
            "solver": "CG", "variant": variant, "n_clusters": n_clusters, "lam": lam,
            "epsilon": epsilon, "max_iter": max_iter, "seed": seed, "n_init": n_init,
            "refine": refine, "refine_lam": refine_lam, "rounding": rounding,
        })
        self._settings = {
            "problem": PsiProblem(kind=f"{variant}_{task}", dataset=self.dataset, lam=lam),
            "n_clusters": n_clusters, "epsilon": epsilon, "max_iter": max_iter, "seed": seed,
            "n_init": n_init, "record_iterates": record_iterates, "refine": refine,
            "refine_lam": lam if refine_lam is None else refine_lam,
            "refine_max_iter": refine_max_iter, "n_jobs": n_jobs, "rounding": rounding,
        }

    def fit(self):
        """
        :return: The fitted model and a SolverReport whose objective trace holds psi(M_t)
            and whose gap trace holds the certificates.
        """
        super().fit()
        settings = self._settings
        start = perf_counter()
        model, partition, trace = cg_fit(
            settings["problem"], settings["n_clusters"], epsilon=settings["epsilon"],
            max_iter=settings["max_iter"], seed=settings["seed"], n_init=settings["n_init"],
            record_iterates=settings["record_iterates"], n_jobs=settings["n_jobs"],
            rounding=settings["rounding"])
        # an early stop can only come from the gap test
        converged = len(trace) < settings["max_iter"] or (
            settings["epsilon"] is not None and trace[-1].gap <= settings["epsilon"])
        report = SolverReport(objective_trace=[state.psi for state in trace],
                              gap_trace=[state.gap for state in trace],
                              iterations=len(trace), converged=converged)
        if settings["record_iterates"]:
            report.iterates = [state.M for state in trace]

        hyperparams = Hyperparams(n_clusters=settings["n_clusters"], lam=settings["refine_lam"],
                                  max_iter=settings["refine_max_iter"], seed=settings["seed"])
        if settings["refine"] == "AM":
            model = refine_sample_model(self.dataset, model, hyperparams)
        elif settings["refine"] == "PGD":
            warm = model.weights()
            if model.variant == ModelVariant.SAMPLE:
                warm = model.values[:, model.partition.labels()]
            config = PGDConfig(variant=model.variant, hyperparams=hyperparams, init="WARM",
                               warm_start=warm, n_init=settings["n_init"],
                               n_jobs=settings["n_jobs"])
            model, refined = pgd_fit(self.dataset, config)
            self.logger.info("Projected gradient refinement: %d iterations.",
                             refined.iterations)
            report.step_sizes = refined.step_sizes
        report.wall_time = perf_counter() - start
        return model, report
