"""
This file contains the enumeration and counting of partitions, which size the union of
subspaces the clustered models live in.
"""
from enum import Enum
from math import comb, e
from typing import Iterator, NamedTuple, Tuple

from ..models.partition import Partition

MAX_ENUMERATED_ITEMS = 12


class CountMode(str, Enum):
    EXACTLY = "EXACTLY"
    AT_MOST = "AT_MOST"


def count_mode(mode) -> CountMode:
    if isinstance(mode, CountMode):
        return mode
    try:
        return CountMode[str(mode).upper().replace("-", "_")]
    except KeyError:
        raise NameError(f"Count mode not found! {mode}") from None


def enumerate_partitions(d: int, n_clusters: int, mode="EXACTLY") -> Iterator[Partition]:
    """
    Every partition of d items into exactly (or at most) Q groups, once each, built from
    restricted growth strings: item i gets a label at most 1 + the largest label before it.

    :param d: Number of items, at most 12.
    :param n_clusters: Number of groups Q.
    :param mode: EXACTLY or AT_MOST.
    :return: An iterator of Partition, lazily built.
    """
    mode = count_mode(mode)
    if d > MAX_ENUMERATED_ITEMS:
        raise ValueError(f"Enumerating the partitions of {d} > {MAX_ENUMERATED_ITEMS} items "
                         f"is out of reach: there are {stirling2(d, n_clusters)} of them.")
    if d < 0 or n_clusters < 0:
        raise ValueError(f"d and Q must be nonnegative! {d}, {n_clusters}")
    minimum = n_clusters if mode == CountMode.EXACTLY else 1
    if d == 0:
        empty = mode == CountMode.AT_MOST or n_clusters == 0
        return iter([Partition(groups=(), n_items=0)] if empty else [])
    if n_clusters == 0:
        return iter(())
    return _restricted_growth(d, n_clusters, minimum)


def _restricted_growth(d: int, n_clusters: int, minimum: int) -> Iterator[Partition]:
    labels = [0] * d

    def extend(i: int, used: int):
        if i == d:
            if used >= minimum:
                yield Partition.from_labels(labels)
            return
        # not enough items left to open the missing groups
        if used + (d - i) < minimum:
            return
        for label in range(min(used + 1, n_clusters)):
            labels[i] = label
            yield from extend(i + 1, max(used, label + 1))

    yield from extend(1, 1)


def stirling2(d: int, n_clusters: int) -> int:
    """
    Stirling number of the second kind S(d, Q), S(d, q) = q S(d-1, q) + S(d-1, q-1).
    """
    if d < 0 or n_clusters < 0:
        return 0
    row = [1] + [0] * n_clusters
    for _ in range(d):
        for q in range(n_clusters, 0, -1):
            row[q] = q * row[q] + row[q - 1]
        row[0] = 0
    return row[n_clusters]


def partition_count(d: int, n_clusters: int, mode="EXACTLY") -> int:
    if count_mode(mode) == CountMode.EXACTLY:
        return stirling2(d, n_clusters)
    return sum(stirling2(d, q) for q in range(1, n_clusters + 1)) if d > 0 else 1


def stirling_bounds(d: int, n_clusters: int) -> Tuple[float, float]:
    """
    Q^(d-Q) <= S(d, Q) <= 1/2 (e d / Q)^Q Q^(d-Q), for 1 <= Q <= d.
    """
    if not 1 <= n_clusters <= d:
        raise ValueError(f"The bounds need 1 <= Q <= d! Q={n_clusters}, d={d}")
    Q = n_clusters
    lower = float(Q ** (d - Q))
    return lower, 0.5 * (e * d / Q) ** Q * lower


class SubspaceCount(NamedTuple):
    count: int
    bound: float
    within_bound: bool


def sparse_subspace_count(d: int, k: int, n_clusters: int) -> SubspaceCount:
    """
    Number of maximal subspaces of k-sparse vectors with Q distinct nonzero values,
    C(d, k) S(k, Q), against the bound d^k k^Q Q^(k-Q).

    :param d: Number of features.
    :param k: Number of nonzeros.
    :param n_clusters: Number of distinct values Q.
    :return: A SubspaceCount.
    """
    if not 0 <= k <= d:
        raise ValueError(f"Sparsity must be in [0, d]! k={k}, d={d}")
    if n_clusters < 1:
        raise ValueError(f"The number of clusters must be at least 1! {n_clusters}")
    Q = n_clusters
    count = comb(d, k) * stirling2(k, Q)
    bound = float(d ** k * k ** Q) * float(Q) ** (k - Q)
    return SubspaceCount(count=count, bound=bound, within_bound=count <= bound)
