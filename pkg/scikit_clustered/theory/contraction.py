"""
This file contains the restricted contraction constants of projected gradient on clustered
vectors: rho over sums of three clustered subspaces and nu over sums of two.
"""
import logging
from itertools import combinations_with_replacement, islice
from math import comb
from typing import NamedTuple, Optional, Tuple

import numpy as np
from joblib import Parallel, delayed

from .partitions import enumerate_partitions, stirling2
from .subspaces import SubspaceBasis
from ..exceptions import DimensionError
from ..models.partition import Partition

logger = logging.getLogger(__name__)

MAX_EXACT_FEATURES = 10
CHUNK_SIZE = 20000


class ContractionEstimate(NamedTuple):
    """
    rho = 2 max_{U in E3} ||I - Pi^T X^T X Pi / n||_2, nu = (2/n) max_{U in E2} ||X Pi||_2.
    rho_args and nu_args hold the partitions reaching each maximum. When exact is False
    the subspaces were sampled and rho, nu are lower bounds; coverage is the sampled
    share of the tuples.
    """
    rho: float
    nu: float
    rho_args: Tuple[Partition, ...]
    nu_args: Tuple[Partition, ...]
    n_partitions: int
    exact: bool
    coverage: float

    def to_dict(self) -> dict:
        return {
            "rho": float(self.rho),
            "nu": float(self.nu),
            "rho_args": [partition.to_json() for partition in self.rho_args],
            "nu_args": [partition.to_json() for partition in self.nu_args],
            "n_partitions": int(self.n_partitions),
            "exact": bool(self.exact),
            "coverage": float(self.coverage),
        }


def restricted_deviation(X: np.ndarray, basis: SubspaceBasis) -> float:
    """
    ||I - Pi^T X^T X Pi / n||_2 for the orthonormal basis Pi.
    """
    X = np.asarray(X, dtype=float)
    if X.shape[1] != basis.basis.shape[0]:
        raise DimensionError(f"The basis lives in R^{basis.basis.shape[0]}, not R^{X.shape[1]}.")
    XP = X @ basis.basis
    deviation = np.eye(basis.dim) - XP.T @ XP / X.shape[0]
    return float(np.max(np.abs(np.linalg.eigvalsh(deviation))))


def _indicators(labels: np.ndarray, n_clusters: int) -> np.ndarray:
    """Indicators of the groups 1 .. Q-1; with the constant vector they span U_G."""
    return (labels[:, :, None] == np.arange(1, n_clusters)[None, None, :]).astype(float)


def _chunk_norms(indicators: np.ndarray, gram: np.ndarray, tuples: np.ndarray):
    """
    For every tuple of partitions: the largest |eigenvalue| of I - Pi^T G Pi and the
    largest eigenvalue of Pi^T G Pi, Pi an orthonormal basis of the summed subspaces.
    """
    size, d = tuples.shape[0], gram.shape[0]
    columns = [np.ones((size, d, 1))] + [indicators[tuples[:, r]]
                                         for r in range(tuples.shape[1])]
    U, s, _ = np.linalg.svd(np.concatenate(columns, axis=2), full_matrices=False)
    mask = (s > s[:, :1] * 1e-10).astype(float)
    U = U * mask[:, None, :]
    restricted = np.swapaxes(U, 1, 2) @ gram @ U
    deviation = np.abs(np.linalg.eigvalsh(mask[:, :, None] * np.eye(mask.shape[1])
                                          - restricted)).max(axis=1)
    top = np.clip(np.linalg.eigvalsh(restricted)[:, -1], 0.0, None)
    return deviation, top


def _tuple_chunks(n_partitions: int, order: int):
    iterator = combinations_with_replacement(range(n_partitions), order)
    while True:
        chunk = list(islice(iterator, CHUNK_SIZE))
        if not chunk:
            return
        yield np.array(chunk, dtype=int)


def _maximize(indicators, gram, chunks, pick, n_jobs):
    """Deterministic max over chunks, first tuple wins ties."""
    chunks = list(chunks)
    results = Parallel(n_jobs=n_jobs)(
        delayed(_chunk_norms)(indicators, gram, chunk) for chunk in chunks
    )
    best, best_tuple = -np.inf, None
    for chunk, values in zip(chunks, results):
        values = values[pick]
        ix = int(np.argmax(values))
        if values[ix] > best:
            best, best_tuple = float(values[ix]), chunk[ix]
    return best, best_tuple


def _random_labels(rng: np.random.Generator, d: int, n_clusters: int, size: int) -> np.ndarray:
    """Canonical labels of random partitions into exactly Q groups."""
    labels = np.empty((size, d), dtype=int)
    for r in range(size):
        while True:
            draw = rng.integers(0, n_clusters, size=d)
            if np.unique(draw).shape[0] == n_clusters:
                break
        labels[r] = Partition.from_labels(draw).labels()
    return labels


def contraction_constants(X: np.ndarray, n_clusters: int, max_subspaces: int = 500000,
                          n_samples: int = 20000, seed: int = 0,
                          n_jobs: Optional[int] = None) -> ContractionEstimate:
    """
    rho and nu of projected gradient with unit steps on Q-clustered vectors. All the
    partitions into exactly Q groups are enumerated when d <= 10 and the number of
    triples stays below max_subspaces, otherwise n_samples random triples (pairs) are
    used and the constants are lower bounds.

    :param X: Design matrix n x d.
    :param n_clusters: Number of groups Q, at most d.
    :param max_subspaces: Largest number of enumerated triples.
    :param n_samples: Number of sampled triples and pairs when not enumerating.
    :param seed: Seed of the sampling.
    :param n_jobs: Joblib workers over chunks of subspaces.
    :return: A ContractionEstimate.
    """
    X = np.asarray(X, dtype=float)
    n, d = X.shape
    if not 1 <= n_clusters <= d:
        raise ValueError(f"The number of clusters must be in [1, {d}]! {n_clusters}")
    gram = X.T @ X / n
    n_partitions = stirling2(d, n_clusters)
    n_triples = comb(n_partitions + 2, 3)
    exact = d <= MAX_EXACT_FEATURES and n_triples <= max_subspaces

    if exact:
        partitions = list(enumerate_partitions(d, n_clusters))
        labels = np.array([partition.labels() for partition in partitions])
        indicators = _indicators(labels, n_clusters)
        rho, rho_tuple = _maximize(indicators, gram, _tuple_chunks(n_partitions, 3), 0, n_jobs)
        top, nu_tuple = _maximize(indicators, gram, _tuple_chunks(n_partitions, 2), 1, n_jobs)
        coverage = 1.0
    else:
        rng = np.random.default_rng(seed)
        labels = _random_labels(rng, d, n_clusters, 5 * n_samples)
        indicators = _indicators(labels, n_clusters)
        triples = np.arange(3 * n_samples).reshape(n_samples, 3)
        pairs = 3 * n_samples + np.arange(2 * n_samples).reshape(n_samples, 2)
        rho, rho_tuple = _maximize(indicators, gram, np.array_split(
            triples, max(1, n_samples // CHUNK_SIZE)), 0, n_jobs)
        top, nu_tuple = _maximize(indicators, gram, np.array_split(
            pairs, max(1, n_samples // CHUNK_SIZE)), 1, n_jobs)
        coverage = min(1.0, n_samples / n_triples)
        logger.warning("Sampled %d of %d subspace triples: rho and nu are lower bounds.",
                       n_samples, n_triples)

    def to_partitions(tuple_):
        return tuple(Partition.from_labels(labels[ix]) for ix in tuple_)

    estimate = ContractionEstimate(rho=2.0 * rho, nu=2.0 * np.sqrt(top / n),
                                   rho_args=to_partitions(rho_tuple),
                                   nu_args=to_partitions(nu_tuple),
                                   n_partitions=n_partitions, exact=exact, coverage=coverage)
    logger.info("Contraction constants: rho %.4f, nu %.4e.", estimate.rho, estimate.nu)
    return estimate
