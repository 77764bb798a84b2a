"""
This file contains the experiment runner: the synthetic comparisons along noise dimensions,
sample size and label noise, and a repeated train/test benchmark on any CSV dataset.
"""
import logging
from typing import Dict, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from joblib import Parallel, delayed
from pandas import DataFrame
from scipy import linalg
from sklearn.model_selection import train_test_split

from .cross_validation import FIT_FAILURES, CVConfig, cross_validate
from .generators import (FeatureClusteredSpec, SampleClusteredSpec, generate_feature_clustered,
                         generate_sample_clustered)
from .methods import fit_method, score_fit
from ..metrics.evaluation import mse_samples, weight_error
from ..models.dataset import Dataset
from ..models.partition import Partition, partition_to_assignment

logger = logging.getLogger(__name__)

TABLES = {
    "T1": {"sweep": "p", "columns": (0.0, 0.25, 0.5, 0.75, 0.9, 0.95),
           "methods": ("ORACLE", "AM", "PG_AM", "CG_AM"), "scale": 100.0, "n_clusters": 3},
    "T2": {"sweep": "n", "columns": (50, 75, 100, 125, 150),
           "methods": ("ORACLE", "LS", "LSK", "PG", "CG", "CGPG"), "scale": 1.0,
           "n_clusters": 5, "generator": {"spacing": "GRID"}},
    "T3": {"sweep": "sigma", "columns": (0.05, 0.1, 0.5, 1.0),
           "methods": ("ORACLE", "LS", "LSK", "PG", "CG", "CGPG"), "scale": 100.0,
           "n_clusters": 5, "generator": {"spacing": "GRID"}},
}

DEFAULT_LAMBDAS = {"LS": 0.0, "LSK": 0.0, "IHT": 0.0, "AM": 1e-6, "PG": 1e-6, "PGS": 1e-6,
                   "PG_AM": 1e-6, "CG": 1e-3, "CGPG": 1e-3, "CGPGS": 1e-3, "CG_AM": 1e-3}


def table_name(table) -> str:
    key = str(table).upper()
    key = key if key.startswith("T") else f"T{key}"
    if key not in TABLES:
        raise NameError(f"Experiment table not found! {table}")
    return key


class ExperimentResult(NamedTuple):
    """
    values[method][column] lists the scaled score of every trial, NaN for failed fits.
    summary holds "mean±std" with one row per method and one column per sweep value.
    """
    table: str
    sweep: str
    columns: Tuple
    scale: float
    values: Dict[str, Dict[str, list]]
    summary: DataFrame

    def to_dict(self) -> dict:
        cells = {}
        for name, per_column in self.values.items():
            cells[name] = {}
            for label, scores in per_column.items():
                scores = np.asarray(scores, dtype=float)
                mean, std = _mean_std(scores)
                cells[name][label] = {"mean": mean, "std": std,
                                      "failures": int(np.isnan(scores).sum())}
        return {"table": self.table, "sweep": self.sweep, "scale": self.scale, "cells": cells}


def _mean_std(scores: np.ndarray):
    valid = scores[~np.isnan(scores)]
    if valid.size == 0:
        return None, None
    std = float(np.std(valid, ddof=1)) if valid.size > 1 else 0.0
    return float(np.mean(valid)), std


def _summary(values: Dict[str, Dict[str, list]], labels: Sequence[str]) -> DataFrame:
    rows = {}
    for name, per_column in values.items():
        row = []
        for label in labels:
            mean, std = _mean_std(np.asarray(per_column[label], dtype=float))
            row.append("nan" if mean is None else f"{mean:.2f}±{std:.2f}")
        rows[name] = row
    return DataFrame.from_dict(rows, orient="index", columns=list(labels))


def trial_seed(seed: int, column: int, trial: int) -> int:
    return int(np.random.SeedSequence([seed, column, trial]).generate_state(1)[0] % (2 ** 31))


def _oracle_samples(train: Dataset, truth) -> np.ndarray:
    """Least squares per true sample group."""
    X, y = train.X, train.y
    return np.column_stack([linalg.lstsq(X[list(group)], y[list(group)])[0]
                            for group in truth.train_partition.groups])


def _oracle_features(dataset: Dataset, w_star: np.ndarray) -> np.ndarray:
    """Least squares on the true feature groups, w = Z v."""
    labels = np.unique(w_star, return_inverse=True)[1]
    Z = partition_to_assignment(Partition.from_labels(np.asarray(labels).ravel())).Z
    v = linalg.lstsq(dataset.X @ Z, dataset.y)[0]
    return Z @ v


def _fit_lambda(name: str, train: Dataset, lambdas: Dict[str, float], n_clusters: int,
                cv: Optional[CVConfig], seed: int) -> float:
    if cv is None:
        return lambdas.get(name, 0.0)
    config = CVConfig(folds=cv.folds, lambdas=cv.lambdas, n_clusters=(n_clusters,),
                      metric=cv.metric)
    return cross_validate(train, name, config, seed=seed).lam


def _run_trial(table: str, value, seed: int, methods: Sequence[str], n_clusters: int,
               lambdas: Dict[str, float], overrides: dict, cv: Optional[CVConfig]):
    scale = TABLES[table]["scale"]
    scores = {}
    if table == "T1":
        spec = SampleClusteredSpec.from_noise_proportion(value, n_clusters=n_clusters,
                                                         seed=seed, **overrides)
        train, test, truth = generate_sample_clustered(spec)
    else:
        sweep = {"n": value} if table == "T2" else {"sigma": value}
        spec_args = {"n_clusters": n_clusters, "seed": seed, **TABLES[table]["generator"],
                     **overrides, **sweep}
        train, w_star = generate_feature_clustered(FeatureClusteredSpec(**spec_args))

    for name in methods:
        try:
            if name == "ORACLE":
                score = mse_samples(test, _oracle_samples(train, truth)) if table == "T1" \
                    else weight_error(_oracle_features(train, w_star), w_star)
            else:
                lam = _fit_lambda(name, train, lambdas, n_clusters, cv, seed)
                fit = fit_method(name, train, lam=lam, n_clusters=n_clusters, seed=seed)
                score = score_fit(fit, test, "MSE_SAMPLES") if table == "T1" \
                    else weight_error(fit.weights, w_star)
        except FIT_FAILURES as error:
            logger.warning("%s failed on %s=%s (seed %d): %s", name, TABLES[table]["sweep"],
                           value, seed, error)
            score = np.nan
        scores[name] = scale * score
    return scores


def run_experiment(table="T2", trials: int = 20, seed: int = 0,
                   methods: Optional[Sequence[str]] = None, columns: Optional[Sequence] = None,
                   n_clusters: Optional[int] = None, lambdas: Optional[Dict[str, float]] = None,
                   overrides: Optional[dict] = None, cv: Union[CVConfig, bool, None] = None,
                   n_jobs: Optional[int] = None) -> ExperimentResult:
    """
    Reproduce one comparison table. T1: sample clustering, test MSE_samples x 100 along the
    share of noise dimensions. T2: feature clustering, ||w* - w_hat|| along n. T3: the same
    error x 100 along the label noise sigma. ORACLE fits least squares on the true groups.

    Every trial draws its data from (seed, column, trial), so results do not depend on
    n_jobs. A failed fit is recorded as NaN and counted.

    :param table: T1, T2 or T3.
    :param trials: Number of trials per column.
    :param seed: The base seed.
    :param methods: Rows of the table, ORACLE and names of experiments.methods.
    :param columns: Sweep values, by default those of the table.
    :param n_clusters: Number of groups Q, 3 for T1 and 5 otherwise.
    :param lambdas: Ridge weight per method, updating DEFAULT_LAMBDAS.
    :param overrides: Extra generator spec fields (e.g. n_train, n_features).
    :param cv: Cross-validate lambda on the training set of every trial with this config,
        True for the default 5-fold logarithmic grid. None keeps DEFAULT_LAMBDAS.
    :param n_jobs: Joblib workers over the trials.
    :return: An ExperimentResult.
    """
    table = table_name(table)
    layout = TABLES[table]
    methods = tuple(str(name).upper().replace("-", "_") for name in
                    (methods or layout["methods"]))
    columns = tuple(columns if columns is not None else layout["columns"])
    n_clusters = n_clusters or layout["n_clusters"]
    lambdas = {**DEFAULT_LAMBDAS, **(lambdas or {})}
    if isinstance(cv, bool):
        cv = CVConfig() if cv else None
    overrides = overrides or {}
    if trials < 1:
        raise ValueError(f"At least one trial is needed! {trials}")

    tasks = [(c, t) for c in range(len(columns)) for t in range(trials)]
    results = Parallel(n_jobs=n_jobs)(
        delayed(_run_trial)(table, columns[c], trial_seed(seed, c, t), methods, n_clusters,
                            lambdas, overrides, cv)
        for c, t in tasks
    )

    labels = [f"{layout['sweep']}={value}" for value in columns]
    values = {name: {label: [] for label in labels} for name in methods}
    for (c, _), scores in zip(tasks, results):
        for name in methods:
            values[name][labels[c]].append(scores[name])
    logger.info("Experiment %s done: %d trials on %d columns.", table, trials, len(columns))
    return ExperimentResult(table=table, sweep=layout["sweep"], columns=columns,
                            scale=layout["scale"], values=values,
                            summary=_summary(values, labels))


def _run_split(dataset: Dataset, methods, n_clusters, sparsity, lambdas, train_fraction,
               seed, scale):
    train_ix, test_ix = train_test_split(np.arange(dataset.n_samples), train_size=train_fraction,
                                         random_state=seed)
    train, test = dataset.subset(np.sort(train_ix)), dataset.subset(np.sort(test_ix))
    scores = {}
    for name in methods:
        try:
            fit = fit_method(name, train, lam=lambdas.get(name, 0.0), n_clusters=n_clusters,
                             sparsity=sparsity, seed=seed)
            scores[name] = scale * score_fit(fit, test, "MSE")
        except FIT_FAILURES as error:
            logger.warning("%s failed on split %d: %s", name, seed, error)
            scores[name] = np.nan
    return scores


def run_csv_benchmark(dataset: Dataset,
                      methods: Sequence[str] = ("LS", "LSK", "IHT", "PG", "PGS", "CGPGS"),
                      n_clusters: int = 5, sparsity: Optional[int] = None,
                      lambdas: Optional[Dict[str, float]] = None, train_fraction: float = 0.8,
                      repeats: int = 20, seed: int = 0, scale: float = 100.0,
                      n_jobs: Optional[int] = None) -> ExperimentResult:
    """
    Test MSE (times scale) of each method over repeated random train/test splits of a
    regression dataset. Split r is drawn from (seed, r).

    :param dataset: A regression Dataset.
    :param methods: Feature methods of experiments.methods.
    :param n_clusters: Number of groups Q.
    :param sparsity: Number of nonzeros of the sparse methods, by default d // 2.
    :param lambdas: Ridge weight per method, updating DEFAULT_LAMBDAS.
    :param train_fraction: Share of the samples used for training.
    :param repeats: Number of splits.
    :param seed: The base seed.
    :param scale: Multiplier of the reported errors.
    :param n_jobs: Joblib workers over the splits.
    :return: An ExperimentResult with a single column.
    """
    if not 0 < train_fraction < 1:
        raise ValueError(f"train_fraction must be in (0, 1)! {train_fraction}")
    if dataset.y.ndim != 1:
        raise ValueError("The CSV benchmark needs a label vector.")
    methods = tuple(str(name).upper().replace("-", "_") for name in methods)
    lambdas = {**DEFAULT_LAMBDAS, **(lambdas or {})}
    results = Parallel(n_jobs=n_jobs)(
        delayed(_run_split)(dataset, methods, n_clusters, sparsity, lambdas, train_fraction,
                            trial_seed(seed, 0, r), scale)
        for r in range(repeats)
    )
    label = "test_mse"
    values = {name: {label: [scores[name] for scores in results]} for name in methods}
    return ExperimentResult(table="CSV", sweep="split", columns=(label,), scale=scale,
                            values=values, summary=_summary(values, [label]))
