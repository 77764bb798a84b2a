"""
This file contains the methods compared by the experiments, each fitted from a dataset and
a hyperparameter point, and their scoring.
"""
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from ..baselines.alternating import fit_alternating_sample
from ..baselines.iht import fit_iht
from ..baselines.least_squares import fit_ls, fit_lsk
from ..metrics.evaluation import mse_samples, prediction_mse
from ..models.clustered import ClusteredLinearModel, ModelVariant
from ..models.dataset import Dataset
from ..models.hyperparams import Hyperparams
from ..solvers.conditional_gradient import PsiProblem, cg_fit
from ..solvers.projected_gradient import PGDConfig, pgd_fit, refine_sample_model


class Method(str, Enum):
    LS = "LS"
    LSK = "LSK"
    IHT = "IHT"
    PG = "PG"
    PGS = "PGS"
    CG = "CG"
    CGPG = "CGPG"
    CGPGS = "CGPGS"
    AM = "AM"
    PG_AM = "PG_AM"
    CG_AM = "CG_AM"


SAMPLE_METHODS = (Method.AM, Method.PG_AM, Method.CG_AM)
SPARSE_METHODS = (Method.IHT, Method.PGS, Method.CGPGS)


def method(name) -> Method:
    if isinstance(name, Method):
        return name
    try:
        return Method[str(name).upper().replace("-", "_").replace("+", "_")]
    except KeyError:
        raise NameError(f"Method not found! {name}") from None


class MethodFit(NamedTuple):
    """
    weights: the d predictor of feature methods; experts: the d x Q experts of sample
    methods; model: the fitted model when the method builds one.
    """
    weights: Optional[np.ndarray]
    experts: Optional[np.ndarray]
    model: object = None


def _pgd(dataset: Dataset, variant: ModelVariant, hyperparams: Hyperparams, warm=None,
         n_jobs: Optional[int] = None):
    config = PGDConfig(variant=variant, hyperparams=hyperparams,
                       init=None if warm is None else "WARM", warm_start=warm, n_jobs=n_jobs)
    model, _ = pgd_fit(dataset, config)
    return model


def fit_method(name, dataset: Dataset, lam: float = 0.0, n_clusters: int = 2,
               sparsity: Optional[int] = None, seed: int = 0, max_iter: int = 500,
               n_jobs: Optional[int] = None) -> MethodFit:
    """
    Fit one method at one hyperparameter point.

    Feature methods: LS, LSK, IHT, PG (LSK start), PGS (sparse, LSK start), CG,
    CGPG and CGPGS (projected gradient started from the rounded CG model). Sample
    methods: AM, PG_AM and CG_AM (AM refinement of the PG or CG partition).

    :param name: The Method or its name.
    :param dataset: The training Dataset.
    :param lam: Ridge weight, strictly positive for the CG methods.
    :param n_clusters: Number of groups Q.
    :param sparsity: Number of nonzeros k of the sparse methods, by default d // 2.
    :param seed: The random seed.
    :param max_iter: Iteration budget of the iterative methods.
    :param n_jobs: Joblib workers of the k-means++ restarts.
    :return: A MethodFit.
    """
    name = method(name)
    if name in SPARSE_METHODS and sparsity is None:
        sparsity = max(dataset.n_features // 2, n_clusters)
    hyperparams = Hyperparams(n_clusters=n_clusters, lam=lam, max_iter=max_iter, seed=seed,
                              sparsity=sparsity if name in (Method.PGS, Method.CGPGS) else None)

    if name == Method.LS:
        return MethodFit(weights=fit_ls(dataset, lam), experts=None)
    if name == Method.LSK:
        model = fit_lsk(dataset, n_clusters, lam, seed=seed)
        return MethodFit(weights=model.weights(), experts=None, model=model)
    if name == Method.IHT:
        w, _ = fit_iht(dataset, sparsity, lam, max_iter=max_iter)
        return MethodFit(weights=w, experts=None)
    if name in (Method.PG, Method.PGS):
        variant = ModelVariant.FEATURE if name == Method.PG else ModelVariant.SPARSE_FEATURE
        model = _pgd(dataset, variant, hyperparams, n_jobs=n_jobs)
        return MethodFit(weights=model.weights(), experts=None, model=model)
    if name in (Method.CG, Method.CGPG, Method.CGPGS):
        model, _, _ = cg_fit(PsiProblem(kind="FEATURE_REGRESSION", dataset=dataset, lam=lam),
                             n_clusters, seed=seed, n_jobs=n_jobs)
        if name != Method.CG:
            variant = ModelVariant.FEATURE if name == Method.CGPG else \
                ModelVariant.SPARSE_FEATURE
            model = _pgd(dataset, variant, hyperparams, warm=model.weights(), n_jobs=n_jobs)
        return MethodFit(weights=model.weights(), experts=None, model=model)

    if name == Method.AM:
        result = fit_alternating_sample(dataset, n_clusters, lam, seed=seed)
        model = ClusteredLinearModel(variant=ModelVariant.SAMPLE, partition=result.partition,
                                     values=result.experts)
        return MethodFit(weights=None, experts=result.experts, model=model)
    if name == Method.PG_AM:
        model = _pgd(dataset, ModelVariant.SAMPLE, hyperparams, n_jobs=n_jobs)
    else:
        model, _, _ = cg_fit(PsiProblem(kind="SAMPLE_REGRESSION", dataset=dataset, lam=lam),
                             n_clusters, seed=seed, n_jobs=n_jobs)
    model = refine_sample_model(dataset, model, hyperparams)
    return MethodFit(weights=None, experts=model.values, model=model)


def score_fit(fit: MethodFit, dataset: Dataset, metric: Optional[str] = None) -> float:
    """
    :param fit: The MethodFit.
    :param dataset: The evaluation Dataset.
    :param metric: MSE (prediction error of the weights) or MSE_SAMPLES (best expert
        error). None picks MSE_SAMPLES for sample methods, MSE otherwise.
    :return: The score, lower is better.
    """
    if metric is None:
        metric = "MSE" if fit.weights is not None else "MSE_SAMPLES"
    metric = str(metric).upper()
    if metric == "MSE_SAMPLES":
        return mse_samples(dataset, fit.experts if fit.experts is not None else fit.weights)
    if metric == "MSE":
        if fit.weights is None:
            return prediction_mse(dataset, fit.model.predict(dataset.X))
        return prediction_mse(dataset, dataset.X @ fit.weights)
    raise NameError(f"Metric not found! {metric}")
