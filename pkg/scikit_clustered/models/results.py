"""
This file contains the result records returned by the clustering and projection kernels.
"""
from typing import NamedTuple, Tuple

import numpy as np

from .partition import Assignment, Partition


class KMeansResult(NamedTuple):
    """
    partition: groups of the clustered points; centroids: one row per group, in the
    partition's group order; cost: within-cluster sum of squared distances;
    cost_trace: cost after each Lloyd iteration.
    """
    partition: Partition
    centroids: np.ndarray
    cost: float
    iterations: int
    cost_trace: Tuple[float, ...] = ()


class ClusteredProjection(NamedTuple):
    assignment: Assignment
    centroids: np.ndarray
    projected: np.ndarray
    partition: Partition
    distance2: float


class NegDPTables(NamedTuple):
    """
    f[j, q]: best sum of s_p mu_p^2 over q groups of the j smallest values, all with a
    negative barycenter, -inf when infeasible. I[j, q]: 1-based start of the last group.
    mu[j, q]: barycenter of the last group. evaluations: recurrence terms visited.
    """
    f: np.ndarray
    I: np.ndarray
    mu: np.ndarray
    evaluations: int


class ProjectionResult(NamedTuple):
    w: np.ndarray
    support: Tuple[int, ...]
    groups: Tuple[Tuple[int, ...], ...]
    barycenters: np.ndarray
    distance2: float

    def to_dict(self) -> dict:
        return {
            "w": [float(v) for v in self.w],
            "support": list(self.support),
            "groups": [list(group) for group in self.groups],
            "barycenters": [float(v) for v in self.barycenters],
            "distance2": float(self.distance2),
        }
