"""
This file contains the clustered linear models produced by the solvers and baselines.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np
from pandas import DataFrame

from .partition import Partition
from ..exceptions import DimensionError


class ModelVariant(str, Enum):
    FEATURE = "FEATURE"
    FEATURE_MULTICLASS = "FEATURE_MULTICLASS"
    SAMPLE = "SAMPLE"
    SPARSE_FEATURE = "SPARSE_FEATURE"
    MULTITASK = "MULTITASK"


def model_variant(name) -> ModelVariant:
    """
    :param name: A ModelVariant or its name, case and dash insensitive (e.g. "feature-class").
    :return: The ModelVariant.
    """
    if isinstance(name, ModelVariant):
        return name
    key = str(name).upper().replace("-", "_")
    aliases = {"FEATURE_CLASS": "FEATURE_MULTICLASS", "SPARSE": "SPARSE_FEATURE",
               "SAMPLE_CLASS": "SAMPLE"}
    key = aliases.get(key, key)
    try:
        return ModelVariant[key]
    except KeyError:
        raise NameError(f"Model variant not found! {name}") from None


def _unique_partition(points: np.ndarray) -> Partition:
    """Group identical rows of points."""
    _, inverse = np.unique(points, axis=0, return_inverse=True)
    return Partition.from_labels(np.asarray(inverse).ravel())


@dataclass(frozen=True, eq=False)
class ClusteredLinearModel:
    """
    Predictor(s) factored as W = Z V.

    values holds V: a vector with one shared weight per feature group (FEATURE), a Q x K
    matrix of shared weight rows (FEATURE_MULTICLASS), a d x Q matrix with one expert per
    sample group (SAMPLE) or a d x Q matrix with one predictor per task group (MULTITASK).
    Columns and rows follow the canonical group order of partition.
    """
    variant: ModelVariant
    partition: Partition
    values: np.ndarray
    intercept: Optional[np.ndarray] = None

    def __post_init__(self):
        variant = model_variant(self.variant)
        values = np.array(self.values, dtype=float)
        if variant in (ModelVariant.FEATURE, ModelVariant.FEATURE_MULTICLASS):
            if values.shape[0] != self.partition.n_groups:
                raise DimensionError("One value (row) per feature group is expected.")
        elif variant in (ModelVariant.SAMPLE, ModelVariant.MULTITASK):
            if values.ndim != 2 or values.shape[1] != self.partition.n_groups:
                raise DimensionError("One column per group is expected.")
        else:
            raise NameError(f"Use SparseClusteredModel for this variant! {variant}")
        values.setflags(write=False)
        object.__setattr__(self, "variant", variant)
        object.__setattr__(self, "values", values)
        if self.intercept is not None:
            object.__setattr__(self, "intercept", np.array(self.intercept, dtype=float))

    @classmethod
    def from_weights(cls, variant, W: np.ndarray,
                     intercept: Optional[np.ndarray] = None) -> "ClusteredLinearModel":
        """
        Recover the minimal partition of an already clustered predictor.

        :param variant: The model variant.
        :param W: Weight vector (FEATURE), d x K weights (FEATURE_MULTICLASS), d x n per-sample
            predictors (SAMPLE) or d x K task predictors (MULTITASK).
        :param intercept: Optional unpenalized intercept.
        :return: A ClusteredLinearModel instance.
        """
        variant = model_variant(variant)
        W = np.asarray(W, dtype=float)
        if variant == ModelVariant.FEATURE:
            partition = _unique_partition(W.reshape(-1, 1))
            values = np.array([W[group[0]] for group in partition.groups])
        elif variant == ModelVariant.FEATURE_MULTICLASS:
            partition = _unique_partition(W)
            values = np.array([W[group[0]] for group in partition.groups])
        else:
            partition = _unique_partition(W.T)
            values = np.column_stack([W[:, group[0]] for group in partition.groups])
        return cls(variant=variant, partition=partition, values=values, intercept=intercept)

    @property
    def n_groups(self) -> int:
        return self.partition.n_groups

    def weights(self) -> np.ndarray:
        """
        :return: w = Zv (FEATURE), W = ZV (FEATURE_MULTICLASS), the experts (SAMPLE) or the
            task predictors V Z^T (MULTITASK).
        """
        labels = self.partition.labels()
        if self.variant in (ModelVariant.FEATURE, ModelVariant.FEATURE_MULTICLASS):
            return self.values[labels]
        if self.variant == ModelVariant.MULTITASK:
            return self.values[:, labels]
        return self.values

    def predict_all(self, X: np.ndarray) -> np.ndarray:
        """
        Scores of every expert (SAMPLE), otherwise the model prediction.
        """
        if self.variant != ModelVariant.SAMPLE:
            return self.predict(X)
        scores = np.asarray(X, dtype=float) @ self.values
        return scores if self.intercept is None else scores + self.intercept

    def predict(self, X: np.ndarray) -> np.ndarray:
        """
        For SAMPLE models the prediction averages the experts weighted by their group
        sizes, y = sum_q (s_q / n) v_q^T x.
        """
        X = np.asarray(X, dtype=float)
        if self.variant == ModelVariant.SAMPLE:
            weights = self.partition.sizes / self.partition.n_items
            scores = X @ (self.values @ weights)
        else:
            scores = X @ self.weights()
        return scores if self.intercept is None else scores + self.intercept

    def to_dict(self) -> dict:
        return {
            "variant": self.variant.value,
            "groups": self.partition.to_json(),
            "values": self.values.tolist(),
            "intercept": None if self.intercept is None else np.atleast_1d(
                self.intercept).tolist(),
        }


@dataclass(frozen=True, eq=False)
class SparseClusteredModel:
    """
    k-sparse weight vector whose nonzeros take at most Q distinct values, w = S Z v.

    groups lists the original feature indices of each nonzero group, values the shared
    weight of each group.
    """
    w: np.ndarray
    support: Tuple[int, ...]
    groups: Tuple[Tuple[int, ...], ...]
    values: np.ndarray
    intercept: Optional[float] = None

    variant = ModelVariant.SPARSE_FEATURE

    @classmethod
    def from_weights(cls, w: np.ndarray, intercept: Optional[float] = None,
                     zero_tol: float = 0.0) -> "SparseClusteredModel":
        w = np.array(w, dtype=float)
        w[np.abs(w) <= zero_tol] = 0.0
        support = np.flatnonzero(w)
        if support.size == 0:
            return cls(w=w, support=(), groups=(), values=np.zeros(0), intercept=intercept)
        local = _unique_partition(w[support].reshape(-1, 1))
        groups = tuple(tuple(int(support[ix]) for ix in group) for group in local.groups)
        values = np.array([w[group[0]] for group in groups])
        return cls(w=w, support=tuple(int(ix) for ix in support), groups=groups,
                   values=values, intercept=intercept)

    @property
    def n_groups(self) -> int:
        return len(self.groups)

    def weights(self) -> np.ndarray:
        return self.w

    def predict(self, X: np.ndarray) -> np.ndarray:
        scores = np.asarray(X, dtype=float) @ self.w
        return scores if self.intercept is None else scores + self.intercept

    def to_dict(self) -> dict:
        return {
            "variant": self.variant.value,
            "support": list(self.support),
            "groups": [list(group) for group in self.groups],
            "values": self.values.tolist(),
            "intercept": None if self.intercept is None else float(self.intercept),
        }


def cluster_summary(model, feature_names: Optional[Sequence[str]] = None):
    """
    One row per feature group sorted by decreasing magnitude of its shared weight, so the
    most discriminative groups come first. Sparse models get an extra group for the zero
    features.

    :param model: A FEATURE ClusteredLinearModel or a SparseClusteredModel.
    :param feature_names: Names of the features. Defaults to x0, x1, ...
    :return: A Pandas DataFrame with columns [VALUE, SIZE, FEATURES].
    """
    if isinstance(model, SparseClusteredModel):
        d = model.w.shape[0]
        groups = list(model.groups)
        values = list(model.values)
        zeros = tuple(ix for ix in range(d) if model.w[ix] == 0)
        if zeros:
            groups.append(zeros)
            values.append(0.0)
    elif model.variant == ModelVariant.FEATURE:
        d = model.partition.n_items
        groups = list(model.partition.groups)
        values = list(model.values)
    else:
        raise NameError(f"Cluster summary needs a feature model! {model.variant}")

    if feature_names is None:
        feature_names = [f"x{j}" for j in range(d)]
    rows = [{"VALUE": float(value), "SIZE": len(group),
             "FEATURES": [feature_names[ix] for ix in group]}
            for value, group in zip(values, groups)]
    rows.sort(key=lambda row: (-abs(row["VALUE"]), row["SIZE"]))
    return DataFrame(rows, columns=["VALUE", "SIZE", "FEATURES"])
