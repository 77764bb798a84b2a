"""
This file contains the projections on k-sparse vectors and on k-sparse Q-clustered vectors.
"""
import numpy as np

from ..models.results import NegDPTables, ProjectionResult


def _groups_of_values(w: np.ndarray, support: np.ndarray):
    values, inverse = np.unique(w[support], return_inverse=True)
    inverse = np.asarray(inverse).ravel()
    groups = [tuple(int(ix) for ix in support[inverse == q]) for q in range(values.shape[0])]
    groups.sort(key=lambda group: group[0])
    barycenters = np.array([w[group[0]] for group in groups])
    return tuple(groups), barycenters


def project_ksparse(x, k: int) -> ProjectionResult:
    """
    Keep the k entries of largest magnitude, zero the others. Ties keep the lower index.

    :param x: The vector to project.
    :param k: Number of entries to keep, 0 <= k. Values above d keep everything.
    :return: A ProjectionResult.
    """
    x = np.asarray(x, dtype=float).ravel()
    if k < 0:
        raise ValueError(f"Sparsity must be nonnegative! {k}")
    order = np.argsort(-np.abs(x), kind="stable")
    keep = np.sort(order[:min(int(k), x.shape[0])])
    w = np.zeros_like(x)
    w[keep] = x[keep]
    support = np.flatnonzero(w)
    groups, barycenters = _groups_of_values(w, support)
    return ProjectionResult(w=w, support=tuple(int(ix) for ix in support), groups=groups,
                            barycenters=barycenters, distance2=float(np.sum((x - w) ** 2)))


def negative_side_dp(x_sorted, k: int, n_clusters: int) -> NegDPTables:
    """
    Best split of the j smallest values into q groups with negative barycenters,
    f(j, q) = max_{q <= i <= j, mu(x_i..x_j) < 0} f(i-1, q-1) + (j-i+1) mu(x_i..x_j)^2,
    for 0 <= j <= k and 0 <= q <= Q. f(0, q) = 0; f(j, 0) = -inf for j >= 1.

    The barycenter of x_i..x_j is updated in O(1) while i decreases, so the whole table
    costs O(k^2 Q).

    :param x_sorted: Values sorted ascending.
    :param k: Largest number of selected values.
    :param n_clusters: Largest number of groups Q.
    :return: The NegDPTables with 1-based start indexes in I.
    """
    x = np.asarray(x_sorted, dtype=float).ravel()
    k = min(int(k), x.shape[0])
    Q = int(n_clusters)
    f = np.full((k + 1, Q + 1), -np.inf)
    f[0, :] = 0.0
    I = np.zeros((k + 1, Q + 1), dtype=int)
    mu = np.zeros((k + 1, Q + 1))
    evaluations = 0

    for q in range(1, Q + 1):
        for j in range(q, k + 1):
            best = -np.inf
            best_i = 0
            best_mu = 0.0
            mean = 0.0
            # i runs from j down to q, the last group is x_i..x_j (1-based)
            for i in range(j, q - 1, -1):
                size = j - i + 1
                mean = (x[i - 1] + (size - 1) * mean) / size
                evaluations += 1
                if mean >= 0.0:
                    continue
                previous = f[i - 1, q - 1]
                if previous == -np.inf:
                    continue
                value = previous + size * mean * mean
                if value > best:
                    best = value
                    best_i = i
                    best_mu = mean
            f[j, q] = best
            I[j, q] = best_i
            mu[j, q] = best_mu
    return NegDPTables(f=f, I=I, mu=mu, evaluations=evaluations)


def _backtrack(tables: NegDPTables, positions: np.ndarray, j: int, q: int, sign: float):
    groups = []
    while q > 0 and j > 0:
        i = int(tables.I[j, q])
        groups.append((positions[i - 1:j], sign * tables.mu[j, q]))
        j = i - 1
        q -= 1
    return groups


def project_sparse_clustered(x, k: int, n_clusters: int) -> ProjectionResult:
    """
    Projection on vectors with at most k nonzeros taking at most Q distinct values.

    Maximizes sum_q s_q mu_q^2 over the selected values split in groups of negative and
    positive barycenters: f_- covers the smallest values, f_+ the largest (the same dynamic
    program on -x), and a grid search balances f_-(j, q) + f_+(k' - j, Q' - q) with
    Q' = min(k', Q). Ties prefer smaller k', then smaller q, then smaller j. The sign
    symmetry therefore holds for the distance only: with equal magnitudes on both sides,
    P(-x) and -P(x) can keep different entries while both are optimal.

    :param x: The vector to project.
    :param k: Maximum number of nonzeros.
    :param n_clusters: Maximum number of distinct nonzero values Q.
    :return: A ProjectionResult, the selected entries replaced by their barycenters.
    """
    x = np.asarray(x, dtype=float).ravel()
    d = x.shape[0]
    if n_clusters < 1:
        raise ValueError(f"The number of clusters must be at least 1! {n_clusters}")
    if k < 0:
        raise ValueError(f"Sparsity must be nonnegative! {k}")
    k = min(int(k), d)
    if d == 0 or k == 0:
        return ProjectionResult(w=np.zeros(d), support=(), groups=(), barycenters=np.zeros(0),
                                distance2=float(np.sum(x ** 2)))

    order = np.argsort(x, kind="stable")
    descending = order[::-1]
    negative = negative_side_dp(x[order], k, n_clusters)
    positive = negative_side_dp(-x[descending], k, n_clusters)

    best_value = 0.0
    best = (0, 0, 0, 0)
    for k_prime in range(1, k + 1):
        q_prime = min(k_prime, n_clusters)
        for q in range(q_prime + 1):
            for j in range(k_prime + 1):
                value = negative.f[j, q] + positive.f[k_prime - j, q_prime - q]
                if value > best_value:
                    best_value = value
                    best = (k_prime, q_prime, q, j)

    k_prime, q_prime, q, j = best
    selected = _backtrack(negative, order, j, q, 1.0) + \
        _backtrack(positive, descending, k_prime - j, q_prime - q, -1.0)

    w = np.zeros(d)
    groups = []
    for positions, barycenter in selected:
        w[positions] = barycenter
        groups.append((tuple(sorted(int(ix) for ix in positions)), float(barycenter)))
    groups.sort(key=lambda item: item[0][0])
    support = tuple(sorted(ix for group, _ in groups for ix in group))
    return ProjectionResult(w=w, support=support,
                            groups=tuple(group for group, _ in groups),
                            barycenters=np.array([value for _, value in groups]),
                            distance2=float(np.sum((x - w) ** 2)))
