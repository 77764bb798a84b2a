"""
This file contains the synthetic data generators of the sample clustering and feature
clustering experiments.
"""
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np

from ..models.dataset import Dataset
from ..models.partition import Partition

INTRINSIC_FEATURES = 8
SPACINGS = ("UNIFORM", "GRID")


@dataclass(frozen=True)
class SampleClusteredSpec:
    """
    :param n_train: Number of training samples.
    :param n_test: Number of test samples.
    :param n_features: Intrinsic dimension d.
    :param n_noise: Number of appended noise dimensions d_n.
    :param n_clusters: Number of sample groups Q.
    :param sigma_y: Standard deviation of the label noise.
    :param sigma_d: Standard deviation of the appended noise dimensions.
    :param add_bias: Append a constant feature, part of the intrinsic model.
    :param n_redundant: Number of appended features that sum two intrinsic ones.
    :param seed: The random seed.
    """
    n_train: int = 1000
    n_test: int = 100
    n_features: int = INTRINSIC_FEATURES
    n_noise: int = 0
    n_clusters: int = 3
    sigma_y: float = 0.1
    sigma_d: float = 1.0
    add_bias: bool = True
    n_redundant: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.n_features < 1 or self.n_noise < 0 or self.n_redundant < 0:
            raise ValueError("Feature counts must be nonnegative, with d >= 1.")
        if self.n_redundant > 0 and self.n_features < 2:
            raise ValueError("Redundant features need at least two intrinsic ones.")
        if not 1 <= self.n_clusters <= min(self.n_train, max(self.n_test, 1)):
            raise ValueError(f"Q must be in [1, min(n_train, n_test)]! {self.n_clusters}")
        if self.sigma_y < 0 or self.sigma_d < 0:
            raise ValueError("Noise levels must be nonnegative.")

    @classmethod
    def from_noise_proportion(cls, proportion: float, **kwargs) -> "SampleClusteredSpec":
        """
        Spec whose appended noise dimensions make up the share p = d_n / (d + d_n).
        """
        if not 0 <= proportion < 1:
            raise ValueError(f"The noise proportion must be in [0, 1)! {proportion}")
        n_features = kwargs.get("n_features", INTRINSIC_FEATURES)
        n_noise = int(round(proportion * n_features / (1.0 - proportion)))
        return cls(n_noise=n_noise, **kwargs)

    @property
    def total_features(self) -> int:
        return self.n_features + int(self.add_bias) + self.n_redundant + self.n_noise


class SampleGroundTruth(NamedTuple):
    """
    experts: d_total x Q, zero on the redundant and noise features.
    """
    experts: np.ndarray
    train_partition: Partition
    test_partition: Partition


def _sample_design(rng: np.random.Generator, spec: SampleClusteredSpec, n: int,
                   pairs: np.ndarray) -> np.ndarray:
    columns = [rng.standard_normal((n, spec.n_features))]
    if spec.add_bias:
        columns.append(np.ones((n, 1)))
    if spec.n_redundant:
        columns.append(columns[0][:, pairs[:, 0]] + columns[0][:, pairs[:, 1]])
    columns.append(spec.sigma_d * rng.standard_normal((n, spec.n_noise)))
    return np.hstack(columns)


def _feature_names(spec: SampleClusteredSpec) -> Tuple[str, ...]:
    names = [f"x{j}" for j in range(spec.n_features)]
    if spec.add_bias:
        names.append("bias")
    names += [f"redundant{j}" for j in range(spec.n_redundant)]
    names += [f"noise{j}" for j in range(spec.n_noise)]
    return tuple(names)


def generate_sample_clustered(spec: SampleClusteredSpec):
    """
    Sample groups of balanced sizes (round robin), one Gaussian expert per group on the
    intrinsic features and y_i = v_q^T x_i + sigma_y eta. Noise features are i.i.d.
    N(0, sigma_d^2). Pure function of spec.

    :param spec: The SampleClusteredSpec.
    :return: The train Dataset, the test Dataset and the SampleGroundTruth.
    """
    rng = np.random.default_rng(spec.seed)
    intrinsic = spec.n_features + int(spec.add_bias)
    experts = np.zeros((spec.total_features, spec.n_clusters))
    experts[:intrinsic] = rng.standard_normal((intrinsic, spec.n_clusters))
    pairs = np.array([rng.choice(spec.n_features, size=2, replace=False)
                      for _ in range(spec.n_redundant)], dtype=int).reshape(-1, 2)
    names = _feature_names(spec)

    splits = []
    for n in (spec.n_train, spec.n_test):
        X = _sample_design(rng, spec, n, pairs)
        labels = np.arange(n) % spec.n_clusters
        y = np.einsum("ij,ji->i", X, experts[:, labels]) + spec.sigma_y * rng.standard_normal(n)
        splits.append((Dataset(X=X, y=y, feature_names=names), Partition.from_labels(labels)))
    (train, train_partition), (test, test_partition) = splits
    return train, test, SampleGroundTruth(experts=experts, train_partition=train_partition,
                                          test_partition=test_partition)


@dataclass(frozen=True)
class FeatureClusteredSpec:
    """
    :param n: Number of samples.
    :param n_features: Number of features d.
    :param n_clusters: Number of distinct weight values Q.
    :param sigma: Standard deviation of the label noise.
    :param low: Lower end of the uniform weight values.
    :param high: Upper end of the uniform weight values.
    :param min_gap: Smallest distance between two weight values.
    :param spacing: UNIFORM draws the values i.i.d. in [low, high] at least min_gap apart,
        GRID spreads them evenly from low to high.
    :param seed: The random seed.
    """
    n: int = 150
    n_features: int = 100
    n_clusters: int = 5
    sigma: float = 0.5
    low: float = -1.0
    high: float = 1.0
    min_gap: float = 0.1
    spacing: str = "UNIFORM"
    seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.n_features < 1:
            raise ValueError("n and d must be positive.")
        if not 1 <= self.n_clusters <= self.n_features:
            raise ValueError(f"Q must be in [1, d]! {self.n_clusters}")
        spacing = str(self.spacing).upper()
        if spacing not in SPACINGS:
            raise NameError(f"Value spacing not found! {self.spacing}")
        object.__setattr__(self, "spacing", spacing)
        if self.sigma < 0 or self.min_gap < 0 or self.high <= self.low:
            raise ValueError("Invalid noise level or value range.")
        if (self.n_clusters - 1) * self.min_gap > self.high - self.low:
            raise ValueError(f"{self.n_clusters} values {self.min_gap} apart do not fit in "
                             f"[{self.low}, {self.high}].")


def _spread_values(rng: np.random.Generator, spec: FeatureClusteredSpec) -> np.ndarray:
    if spec.spacing == "GRID" and spec.n_clusters > 1:
        return np.linspace(spec.low, spec.high, spec.n_clusters)
    while True:
        values = rng.uniform(spec.low, spec.high, size=spec.n_clusters)
        if spec.n_clusters == 1 or np.diff(np.sort(values)).min() >= spec.min_gap:
            return values


def generate_feature_clustered(spec: FeatureClusteredSpec) -> Tuple[Dataset, np.ndarray]:
    """
    w* with Q distinct values spread uniformly around 0 on balanced feature groups,
    X with i.i.d. standard normal entries and y = X w* + sigma eta.

    :param spec: The FeatureClusteredSpec.
    :return: The Dataset and w*.
    """
    rng = np.random.default_rng(spec.seed)
    values = _spread_values(rng, spec)
    labels = rng.permutation(np.arange(spec.n_features) % spec.n_clusters)
    w_star = values[labels]
    X = rng.standard_normal((spec.n, spec.n_features))
    y = X @ w_star + spec.sigma * rng.standard_normal(spec.n)
    return Dataset(X=X, y=y), w_star
