"""
This file contains the projected gradient solver with backtracking line search, for
feature clustering, sample clustering, sparse feature clustering and clustered multitask
learning.
"""
import logging
from dataclasses import dataclass, field
from time import perf_counter
from typing import Callable, Optional, Tuple

import numpy as np

from .basesolver import BaseSolver, SolverReport
from ..baselines.alternating import fit_alternating_sample
from ..baselines.least_squares import fit_ls, fit_lsk
from ..exceptions import DimensionError, DivergenceError
from ..losses.accessible import VECTOR_LOSSES, LossKind, check_loss_kind, default_loss_kind
from ..losses.multitask import (MultitaskPenaltyParams, multitask_penalty,
                                multitask_penalty_grad)
from ..losses.objective import loss_value_grad, per_sample_value_grad, smooth_objective
from ..models.clustered import (ClusteredLinearModel, ModelVariant, SparseClusteredModel,
                                model_variant)
from ..models.dataset import Dataset
from ..models.hyperparams import Hyperparams
from ..models.partition import Partition
from ..projections.clustered import project_clustered
from ..projections.sparse import project_sparse_clustered

logger = logging.getLogger(__name__)

INITS = ("ZEROS", "WARM", "LS_KMEANS")


@dataclass(frozen=True, eq=False)
class PGDConfig:
    """
    :param variant: The ModelVariant to fit.
    :param hyperparams: Q, k, lambdas, stopping tolerance, iteration budget and seed.
    :param alpha0: Initial step size.
    :param growth: Step growth after an accepted step, > 1.
    :param shrink: Step shrink after a rejected step, in (0, 1).
    :param alpha_min: Step size below which the iterate is declared stationary.
    :param patience: Consecutive backtracked steps decreasing the objective by less than
        epsilon after which the run stops.
    :param init: ZEROS, WARM or LS_KMEANS. None picks ZEROS in theory mode, LS_KMEANS
        otherwise.
    :param warm_start: Starting weights for WARM.
    :param theory_mode: Constant unit step without line search.
    :param loss: LossKind, None picks squared for regression and logistic for classification.
    :param fit_intercept: Fit an unpenalized intercept, feature variants only.
    :param record_iterates: Keep every accepted iterate in the report.
    :param n_init: k-means++ restarts per projection.
    :param n_jobs: Joblib workers for the k-means++ restarts.
    """
    variant: ModelVariant = ModelVariant.FEATURE
    hyperparams: Hyperparams = field(default_factory=Hyperparams)
    alpha0: float = 1.0
    growth: float = 2.0
    shrink: float = 0.5
    alpha_min: float = 1e-10
    patience: int = 10
    init: Optional[str] = None
    warm_start: Optional[np.ndarray] = None
    theory_mode: bool = False
    loss: Optional[LossKind] = None
    fit_intercept: bool = False
    record_iterates: bool = False
    n_init: int = 5
    n_jobs: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "variant", model_variant(self.variant))
        if self.alpha0 <= 0:
            raise ValueError(f"alpha0 must be positive! {self.alpha0}")
        if self.growth <= 1:
            raise ValueError(f"growth must be above 1! {self.growth}")
        if not 0 < self.shrink < 1:
            raise ValueError(f"shrink must be in (0, 1)! {self.shrink}")
        if self.alpha_min <= 0:
            raise ValueError(f"alpha_min must be positive! {self.alpha_min}")
        if self.patience < 1:
            raise ValueError(f"patience must be at least 1! {self.patience}")
        init = self.init
        if init is None:
            init = "ZEROS" if self.theory_mode else "LS_KMEANS"
        init = str(init).upper().replace("-", "_")
        if init not in INITS:
            raise NameError(f"Initialization not found! {self.init}")
        if init == "WARM" and self.warm_start is None:
            raise ValueError("WARM initialization needs warm_start weights.")
        object.__setattr__(self, "init", init)


def _step_seed(seed: int, t: int) -> int:
    return int(np.random.SeedSequence([seed, t]).generate_state(1)[0])


def projected_gradient(value_grad: Callable, project: Callable, x0: np.ndarray,
                       config: PGDConfig) -> Tuple[np.ndarray, SolverReport]:
    """
    Generic projected gradient: x <- P(x - alpha grad).

    With line search a candidate is accepted only when it decreases the objective, then
    alpha grows; otherwise alpha shrinks until alpha_min, where the run stops as
    stationary. Theory mode takes unit steps. The run stops after max_iter accepted steps,
    or when the decrease is below epsilon for a step taken without backtracking. A small
    decrease after backtracking resets alpha to alpha0 and counts towards patience.

    :param value_grad: x -> (objective, gradient).
    :param project: (x, t) -> feasible x, t being the iteration used to seed randomness.
    :param x0: Starting point, projected before the first step.
    :param config: The PGDConfig.
    :return: The last iterate and the SolverReport.
    """
    hp = config.hyperparams
    start = perf_counter()
    report = SolverReport()

    x = project(np.asarray(x0, dtype=float), 0)
    value, grad = value_grad(x)
    report.objective_trace.append(value)
    if config.record_iterates:
        report.iterates.append(x.copy())
    if not np.isfinite(value):
        raise DivergenceError("Non-finite objective at the starting point.", report)

    alpha = config.alpha0
    stalls = 0
    for t in range(1, hp.max_iter + 1):
        backtracked = False
        if config.theory_mode:
            step = 1.0
            candidate = project(x - grad, t)
            candidate_value, candidate_grad = value_grad(candidate)
            if not np.isfinite(candidate_value):
                report.wall_time = perf_counter() - start
                raise DivergenceError(f"Non-finite objective at iteration {t}.", report)
        else:
            candidate = None
            while alpha >= config.alpha_min:
                trial = project(x - alpha * grad, t)
                trial_value, trial_grad = value_grad(trial)
                if np.isfinite(trial_value) and trial_value < value:
                    candidate, candidate_value, candidate_grad = trial, trial_value, trial_grad
                    break
                alpha *= config.shrink
                backtracked = True
            if candidate is None:
                report.converged = True
                report.stationary = True
                logger.debug("Step size below %.1e at iteration %d.", config.alpha_min, t)
                break
            step = alpha

        decrease = value - candidate_value
        x, value, grad = candidate, candidate_value, candidate_grad
        report.objective_trace.append(value)
        report.step_sizes.append(step)
        report.iterations = t
        if config.record_iterates:
            report.iterates.append(x.copy())
        logger.debug("Iteration %d: objective %.10e, step %.3e", t, value, step)

        if abs(decrease) >= hp.epsilon:
            stalls = 0
        elif config.theory_mode or not backtracked:
            report.converged = True
            break
        else:
            # A shrunk step only moves inside the current clusters; retry the full step.
            stalls += 1
            if stalls >= config.patience:
                report.converged = True
                break
            alpha = max(alpha, config.alpha0 / config.growth)
        if not config.theory_mode:
            alpha *= config.growth

    report.wall_time = perf_counter() - start
    logger.info("Projected gradient stopped after %d iterations, objective %.6e.",
                report.iterations, value)
    return x, report


# ################################################################# #
# ######################## Feature clustering ##################### #
# ################################################################# #
def _warm_weights(config: PGDConfig, shape: tuple) -> np.ndarray:
    warm = np.array(config.warm_start, dtype=float)
    if warm.shape == shape:
        return warm
    if warm.size == int(np.prod(shape)):
        return warm.reshape(shape)
    raise DimensionError(f"warm_start of shape {warm.shape} does not fit {shape}.")


def _feature_start(dataset: Dataset, config: PGDConfig, shape: tuple) -> np.ndarray:
    hp = config.hyperparams
    if config.init == "ZEROS":
        return np.zeros(shape)
    if config.init == "WARM":
        return _warm_weights(config, shape)
    return fit_lsk(dataset, hp.n_clusters, hp.lam, seed=hp.seed).weights().reshape(shape)


def pgd_fit(dataset: Dataset, config: PGDConfig):
    """
    Projected gradient for every model variant.

    FEATURE projects with the exact 1-D k-means, FEATURE_MULTICLASS with k-means++ on the
    weight rows, SPARSE_FEATURE with the k-sparse Q-clustered projection. SAMPLE and
    MULTITASK delegate to pgd_fit_sample_cluster and pgd_fit_multitask.

    :param dataset: The training Dataset.
    :param config: The PGDConfig.
    :return: The fitted model and the SolverReport.
    """
    variant = config.variant
    hp = config.hyperparams
    if variant == ModelVariant.SAMPLE:
        V, partition, report = pgd_fit_sample_cluster(dataset, config)
        return ClusteredLinearModel(variant=variant, partition=partition, values=V), report
    if variant == ModelVariant.MULTITASK:
        _, W_tilde, _, report = pgd_fit_multitask(dataset, config)
        return ClusteredLinearModel.from_weights(variant, W_tilde), report

    kind = check_loss_kind(config.loss or default_loss_kind(dataset), dataset.y)
    X, y = dataset.X, dataset.y
    d = dataset.n_features
    if variant == ModelVariant.FEATURE_MULTICLASS:
        if kind in VECTOR_LOSSES:
            raise DimensionError("FEATURE_MULTICLASS needs a label matrix.")
        shape = (d, dataset.n_outputs)

        def project_weights(W, t):
            return project_clustered(W, hp.n_clusters, mode="KMEANSPP",
                                     seed=_step_seed(hp.seed, t), n_init=config.n_init,
                                     n_jobs=config.n_jobs).projected
    else:
        if kind not in VECTOR_LOSSES:
            raise DimensionError(f"{variant.value} needs a label vector.")
        shape = (d,)
        if variant == ModelVariant.SPARSE_FEATURE:
            if hp.sparsity is None:
                raise ValueError("SPARSE_FEATURE needs the sparsity k.")

            def project_weights(w, t):
                return project_sparse_clustered(w, hp.sparsity, hp.n_clusters).w
        else:
            def project_weights(w, t):
                return project_clustered(w, hp.n_clusters, mode="EXACT_1D").projected

    W0 = _feature_start(dataset, config, shape)
    if config.fit_intercept:
        residual = y - X @ W0
        b0 = residual.mean(axis=0) if kind == LossKind.SQUARED or \
            kind == LossKind.MULTICLASS_SQUARED else np.zeros(residual.shape[1:])
        x0 = np.concatenate([W0, np.reshape(b0, (1,) + shape[1:])])
    else:
        x0 = W0

    def value_grad(state):
        W = state[:d]
        b = state[d] if config.fit_intercept else None
        value, grad, grad_b = smooth_objective(kind, X, y, W, hp.lam, b)
        if config.fit_intercept:
            grad = np.concatenate([grad, np.reshape(grad_b, (1,) + shape[1:])])
        return value, grad

    def project(state, t):
        projected = state.copy()
        projected[:d] = project_weights(state[:d], t)
        return projected

    state, report = projected_gradient(value_grad, project, x0, config)
    W = state[:d]
    intercept = state[d] if config.fit_intercept else None
    if variant == ModelVariant.SPARSE_FEATURE:
        model = SparseClusteredModel.from_weights(
            W, intercept=None if intercept is None else float(intercept))
    else:
        model = ClusteredLinearModel.from_weights(variant, W, intercept=intercept)
    return model, report


# ################################################################# #
# ######################## Sample clustering ###################### #
# ################################################################# #
def pgd_fit_sample_cluster(dataset: Dataset, config: PGDConfig):
    """
    Projected gradient on the per-sample predictors W = (w_1 .. w_n), d x n; the projection
    clusters the n columns with k-means++, so W = V Z^T at every iterate.

    LS_KMEANS starts from the ridge fit of each sample alone,
    w_i = y_i x_i / (||x_i||^2 + n lam).

    :param dataset: The training Dataset with a label vector.
    :param config: The PGDConfig.
    :return: The experts V (d x Q'), the Partition of the samples and the SolverReport.
    """
    hp = config.hyperparams
    kind = check_loss_kind(config.loss or default_loss_kind(dataset), dataset.y)
    if kind not in VECTOR_LOSSES:
        raise DimensionError("Sample clustering needs a label vector.")
    if config.fit_intercept:
        raise ValueError("fit_intercept is only supported by the feature variants.")
    X, y = dataset.X, dataset.y
    n, d = X.shape
    if hp.n_clusters > n:
        raise ValueError(f"More clusters ({hp.n_clusters}) than samples ({n}).")

    if config.init == "ZEROS":
        W0 = np.zeros((d, n))
    elif config.init == "WARM":
        W0 = _warm_weights(config, (d, n))
    else:
        scale = np.sum(X ** 2, axis=1) + n * hp.lam
        scale[scale == 0] = 1.0
        W0 = (X * (y / scale)[:, None]).T

    def value_grad(W):
        return per_sample_value_grad(kind, dataset, W, hp.lam)

    def project(W, t):
        return project_clustered(W.T, hp.n_clusters, mode="KMEANSPP",
                                 seed=_step_seed(hp.seed, t), n_init=config.n_init,
                                 n_jobs=config.n_jobs).projected.T

    W, report = projected_gradient(value_grad, project, W0, config)
    model = ClusteredLinearModel.from_weights(ModelVariant.SAMPLE, W)
    return model.values, model.partition, report


# ################################################################# #
# ######################## Multitask ############################## #
# ################################################################# #
def pgd_fit_multitask(dataset: Dataset, config: PGDConfig):
    """
    Projected gradient on the pair (W, W~) for L(y, X, W) + R(W) + Omega(W, W~); only the
    columns of W~ are projected on clustered matrices (k-means++ over the K task points).

    :param dataset: The training Dataset with a n x K label matrix.
    :param config: The PGDConfig; the multitask weights come from its hyperparams.
    :return: W, W~, the Partition of the tasks and the SolverReport.
    """
    hp = config.hyperparams
    if dataset.y.ndim != 2:
        raise DimensionError("Multitask learning needs a n x K label matrix.")
    if config.fit_intercept:
        raise ValueError("fit_intercept is only supported by the feature variants.")
    kind = check_loss_kind(config.loss or LossKind.MULTICLASS_SQUARED, dataset.y)
    d, K = dataset.n_features, dataset.n_outputs
    params = MultitaskPenaltyParams(lambda_mean=hp.lambda_mean,
                                    lambda_between=hp.lambda_between,
                                    lambda_within=hp.lambda_within, n_tasks=K)

    if config.init == "ZEROS":
        S0 = np.zeros((2, d, K))
    elif config.init == "WARM":
        warm = np.array(config.warm_start, dtype=float)
        S0 = np.stack([warm, warm]) if warm.shape == (d, K) else _warm_weights(config, (2, d, K))
    else:
        W0 = fit_ls(dataset, hp.lam)
        S0 = np.stack([W0, W0])

    def value_grad(S):
        value, grad = loss_value_grad(kind, dataset, S[0], hp.lam)
        penalty = multitask_penalty(S[0], S[1], params)
        grad_W, grad_W_tilde = multitask_penalty_grad(S[0], S[1], params)
        return value + penalty, np.stack([grad + grad_W, grad_W_tilde])

    def project(S, t):
        projected = S.copy()
        projected[1] = project_clustered(S[1].T, hp.n_clusters, mode="KMEANSPP",
                                         seed=_step_seed(hp.seed, t), n_init=config.n_init,
                                         n_jobs=config.n_jobs).projected.T
        return projected

    S, report = projected_gradient(value_grad, project, S0, config)
    partition = ClusteredLinearModel.from_weights(ModelVariant.MULTITASK, S[1]).partition
    return S[0], S[1], partition, report


class ProjectedGradient(BaseSolver):
    """
    Projected gradient solver, to be configured with config() before fit().
    """
    logger = logging.getLogger(__name__)

    def __init__(self, dataset: Dataset):
        super().__init__(dataset)
        self._config = None
        self._refine_component = None

    def config(self, variant: str = "FEATURE", n_clusters: int = 2,
               sparsity: Optional[int] = None, lam: float = 0.0, lambda_mean: float = 0.0,
               lambda_between: float = 0.0, lambda_within: float = 0.0,
               epsilon: float = 1e-8, max_iter: int = 500, seed: int = 0,
               init: Optional[str] = None, warm_start: Optional[np.ndarray] = None,
               theory_mode: bool = False, loss: Optional[str] = None,
               fit_intercept: bool = False, record_iterates: bool = False, n_init: int = 5,
               refine: Optional[str] = None, n_jobs: Optional[int] = None) -> None:
        """
        Method to config the environment. All variable has default values.

        :param variant: FEATURE, FEATURE_MULTICLASS, SAMPLE, SPARSE_FEATURE or MULTITASK.
        :param refine: None, or AM to refine a SAMPLE fit by alternating minimization.
        """
        refine = None if refine is None else str(refine).upper()
        if refine not in (None, "AM"):
            raise NameError(f"Refinement not found! {refine}")
        super().env(environment={
            "solver": "PGD", "variant": str(variant), "n_clusters": n_clusters,
            "sparsity": sparsity, "lam": lam, "lambda_mean": lambda_mean,
            "lambda_between": lambda_between, "lambda_within": lambda_within,
            "epsilon": epsilon, "max_iter": max_iter, "seed": seed, "init": init,
            "theory_mode": theory_mode, "loss": loss, "fit_intercept": fit_intercept,
            "n_init": n_init, "refine": refine,
        })
        hyperparams = Hyperparams(n_clusters=n_clusters, sparsity=sparsity, lam=lam,
                                  lambda_mean=lambda_mean, lambda_between=lambda_between,
                                  lambda_within=lambda_within, epsilon=epsilon,
                                  max_iter=max_iter, seed=seed)
        self._config = PGDConfig(variant=variant, hyperparams=hyperparams, init=init,
                                 warm_start=warm_start, theory_mode=theory_mode,
                                 loss=None if loss is None else check_loss_kind(
                                     loss, self.dataset.y),
                                 fit_intercept=fit_intercept, record_iterates=record_iterates,
                                 n_init=n_init, n_jobs=n_jobs)
        self._refine_component = refine

    def fit(self):
        """
        :return: The fitted model and the SolverReport.
        """
        super().fit()
        model, report = pgd_fit(self.dataset, self._config)
        if self._refine_component == "AM":
            model = refine_sample_model(self.dataset, model, self._config.hyperparams)
        return model, report


def refine_sample_model(dataset: Dataset, model: ClusteredLinearModel,
                        hyperparams: Hyperparams) -> ClusteredLinearModel:
    """
    Alternating minimization started from the sample partition of model.
    """
    if model.variant != ModelVariant.SAMPLE:
        raise NameError(f"AM refinement needs a SAMPLE model! {model.variant.value}")
    result = fit_alternating_sample(dataset, hyperparams.n_clusters, hyperparams.lam,
                                    seed=hyperparams.seed, init_partition=model.partition)
    return ClusteredLinearModel(variant=ModelVariant.SAMPLE, partition=result.partition,
                                values=result.experts)
