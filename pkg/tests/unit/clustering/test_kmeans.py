"""
Unit Test Case to the exact scalar k-means and the k-means++ clustering.
"""
import unittest

import numpy as np

from scikit_clustered.clustering.kmeans_1d import kmeans_1d_exact
from scikit_clustered.clustering.kmeans_pp import kmeans_pp
from scikit_clustered.theory.partitions import enumerate_partitions


def within_cost(values, partition):
    return sum(float(np.sum((values[list(g)] - values[list(g)].mean()) ** 2))
               for g in partition.groups)


class TestKMeans1D(unittest.TestCase):
    """
    The dynamic program against the enumeration of every partition.
    """

    def test_against_enumeration(self):
        """
        This method is to test that the dynamic program finds the global optimum.
        """
        rng = np.random.default_rng(7)
        for trial in range(5):
            values = rng.standard_normal(7)
            for n_clusters in (1, 2, 3):
                with self.subTest(trial=trial, n_clusters=n_clusters):
                    best = min(within_cost(values, p)
                               for p in enumerate_partitions(7, n_clusters, "AT_MOST"))
                    result = kmeans_1d_exact(values, n_clusters)
                    self.assertAlmostEqual(result.cost, best, places=10)
                    self.assertLessEqual(result.partition.n_groups, n_clusters)

    def test_original_indices(self):
        """
        This method is to test that groups hold the original positions of the values.
        """
        result = kmeans_1d_exact([5.0, 1.0, 5.2, 0.9], 2)
        self.assertEqual(result.partition.groups, ((0, 2), (1, 3)))
        np.testing.assert_allclose(result.centroids[:, 0], [5.1, 0.95])

    def test_few_distinct_values(self):
        result = kmeans_1d_exact([2.0, 2.0, -1.0], 5)
        self.assertEqual(result.partition.n_groups, 2)
        self.assertEqual(result.cost, 0.0)

    def test_errors(self):
        with self.assertRaises(ValueError):
            kmeans_1d_exact([], 2)
        with self.assertRaises(ValueError):
            kmeans_1d_exact([1.0], 0)


class TestKMeansPP(unittest.TestCase):

    def setUp(self):
        rng = np.random.default_rng(1)
        centers = np.array([[0.0, 0.0], [10.0, 0.0], [0.0, 10.0]])
        self.labels = np.repeat(np.arange(3), 10)
        self.points = centers[self.labels] + 0.1 * rng.standard_normal((30, 2))

    def test_separated_blobs(self):
        """
        This method is to test that well separated blobs are recovered.
        """
        result = kmeans_pp(self.points, 3, seed=0)
        self.assertEqual(result.partition.groups,
                         (tuple(range(10)), tuple(range(10, 20)), tuple(range(20, 30))))

    def test_cost_trace_is_monotone(self):
        result = kmeans_pp(self.points, 4, seed=3, n_init=2)
        trace = np.array(result.cost_trace)
        self.assertTrue(np.all(np.diff(trace) <= 1e-9))

    def test_deterministic(self):
        """
        This method is to test that the seed fixes the result whatever the number of workers.
        """
        first = kmeans_pp(self.points, 4, seed=5, n_init=3, n_jobs=1)
        second = kmeans_pp(self.points, 4, seed=5, n_init=3, n_jobs=2)
        self.assertEqual(first.partition, second.partition)
        self.assertAlmostEqual(first.cost, second.cost)

    def test_few_distinct_points(self):
        result = kmeans_pp(np.array([1.0, 1.0, 3.0]), 3)
        self.assertEqual(result.partition.groups, ((0, 1), (2,)))
        self.assertEqual(result.cost, 0.0)

    def test_errors(self):
        with self.assertRaises(ValueError):
            kmeans_pp(np.zeros((0, 2)), 1)
        with self.assertRaises(ValueError):
            kmeans_pp(self.points, 0)
        with self.assertRaises(ValueError):
            kmeans_pp(self.points, 2, n_init=0)
