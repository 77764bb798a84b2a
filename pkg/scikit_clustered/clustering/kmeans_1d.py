"""
This file contains the exact k-means of scalar values by dynamic programming.
"""
import numpy as np

from ..models.partition import Partition
from ..models.results import KMeansResult


def kmeans_1d_exact(values, n_clusters: int) -> KMeansResult:
    """
    Globally optimal within-cluster sum of squares for scalar values.

    Optimal clusters are contiguous once the values are sorted, so
    D[q, j] = min_i D[q-1, i] + SSE(i, j) over the sorted prefix, with SSE read from prefix
    sums. Time O(m^2 Q). When fewer than Q distinct values exist, each distinct value
    gets its own cluster.

    :param values: The m scalar values.
    :param n_clusters: The maximum number of clusters Q.
    :return: A KMeansResult whose partition lists original indices.
    """
    x = np.asarray(values, dtype=float).ravel()
    m = x.shape[0]
    if m == 0:
        raise ValueError("kmeans_1d_exact needs at least one value.")
    if n_clusters < 1:
        raise ValueError(f"The number of clusters must be at least 1! {n_clusters}")

    order = np.argsort(x, kind="stable")
    xs = x[order]
    n_groups = min(int(n_clusters), int(np.unique(xs).shape[0]))

    prefix = np.concatenate(([0.0], np.cumsum(xs)))
    prefix2 = np.concatenate(([0.0], np.cumsum(xs ** 2)))

    # cost[q, j]: best cost of the j smallest values in q clusters
    cost = np.full((n_groups + 1, m + 1), np.inf)
    start = np.zeros((n_groups + 1, m + 1), dtype=int)
    cost[0, 0] = 0.0
    for q in range(1, n_groups + 1):
        for j in range(q, m + 1):
            i = np.arange(q - 1, j)
            count = j - i
            total = prefix[j] - prefix[i]
            sse = np.maximum(prefix2[j] - prefix2[i] - total * total / count, 0.0)
            candidates = cost[q - 1, i] + sse
            best = int(np.argmin(candidates))
            cost[q, j] = candidates[best]
            start[q, j] = i[best]

    groups = []
    j = m
    for q in range(n_groups, 0, -1):
        i = start[q, j]
        groups.append(order[i:j].tolist())
        j = i
    partition = Partition.from_groups(groups, n_items=m)

    centroids = np.array([[x[list(group)].mean()] for group in partition.groups])
    total_cost = float(sum(np.sum((x[list(group)] - centroids[q, 0]) ** 2)
                           for q, group in enumerate(partition.groups)))
    return KMeansResult(partition=partition, centroids=centroids, cost=total_cost,
                        iterations=1, cost_trace=(total_cost,))
