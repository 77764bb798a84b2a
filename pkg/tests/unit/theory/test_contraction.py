"""
Unit Test Case to the contraction constants and the convergence bound check.
"""
import unittest

import numpy as np

from scikit_clustered.exceptions import DimensionError
from scikit_clustered.experiments.generators import (FeatureClusteredSpec,
                                                     generate_feature_clustered)
from scikit_clustered.models.partition import Partition
from scikit_clustered.theory.contraction import contraction_constants, restricted_deviation
from scikit_clustered.theory.convergence import error_bound, verify_convergence_bound
from scikit_clustered.theory.subspaces import subspace_basis


def orthonormal_design(n, d, seed=0):
    """X with X^T X = n I."""
    Q, _ = np.linalg.qr(np.random.default_rng(seed).standard_normal((n, d)))
    return np.sqrt(n) * Q


class TestContraction(unittest.TestCase):

    def test_orthonormal_design(self):
        """
        This method is to test rho = 0 and nu = 2 / sqrt(n) when X^T X = n I.
        """
        X = orthonormal_design(50, 5)
        estimate = contraction_constants(X, 2)
        self.assertTrue(estimate.exact)
        self.assertAlmostEqual(estimate.rho, 0.0, places=8)
        self.assertAlmostEqual(estimate.nu, 2.0 / np.sqrt(50), places=8)
        self.assertEqual(estimate.n_partitions, 15)
        self.assertEqual(len(estimate.rho_args), 3)
        self.assertEqual(len(estimate.nu_args), 2)

    def test_zero_design(self):
        estimate = contraction_constants(np.zeros((10, 4)), 2)
        self.assertAlmostEqual(estimate.rho, 2.0)
        self.assertAlmostEqual(estimate.nu, 0.0)

    def test_matches_direct_deviation(self):
        """
        This method is to test rho against the deviation on the maximizing subspaces.
        """
        X = np.random.default_rng(4).standard_normal((30, 5))
        estimate = contraction_constants(X, 2, n_jobs=2)
        direct = restricted_deviation(X, subspace_basis(*estimate.rho_args))
        self.assertAlmostEqual(estimate.rho, 2.0 * direct, places=8)
        for partition in (Partition.from_groups([[0, 1], [2, 3, 4]]),
                          Partition.from_groups([[0, 4], [1, 2, 3]])):
            basis = subspace_basis(partition, Partition.from_groups([[0], [1, 2, 3, 4]]))
            self.assertLessEqual(2.0 * restricted_deviation(X, basis), estimate.rho + 1e-9)

    def test_sampled(self):
        """
        This method is to test the sampled lower bounds when enumeration is too large.
        """
        X = np.random.default_rng(4).standard_normal((30, 5))
        exact = contraction_constants(X, 2)
        sampled = contraction_constants(X, 2, max_subspaces=10, n_samples=200, seed=1)
        self.assertFalse(sampled.exact)
        self.assertLess(sampled.coverage, 1.0)
        self.assertLessEqual(sampled.rho, exact.rho + 1e-9)

    def test_errors(self):
        with self.assertRaises(ValueError):
            contraction_constants(np.ones((3, 2)), 3)
        with self.assertRaises(DimensionError):
            restricted_deviation(np.ones((3, 2)), subspace_basis(Partition.single(3)))


class TestConvergenceBound(unittest.TestCase):

    def setUp(self):
        self.w_star = np.array([1.0, 1.0, -2.0, -2.0, 1.0])

    def test_error_bound(self):
        self.assertAlmostEqual(error_bound(0.5, 1.0, 2.0, 3.0, 2), 5.0)
        self.assertAlmostEqual(error_bound(1.0, 1.0, 2.0, 3.0, 4), 14.0)
        self.assertAlmostEqual(error_bound(0.0, 1.0, 2.0, 3.0, 0), 2.0)

    def test_bound_holds(self):
        """
        This method is to test that the errors stay below the bound on an orthonormal design.
        """
        X = orthonormal_design(40, 5, seed=2)
        report = verify_convergence_bound(X, self.w_star, sigma=0.1, n_clusters=2, n_iter=10)
        self.assertFalse(report.vacuous)
        self.assertFalse(report.diverged)
        self.assertEqual(report.violations, 0)
        self.assertEqual(len(report.errors), len(report.bounds))
        self.assertAlmostEqual(report.errors[0], np.linalg.norm(self.w_star))
        self.assertGreaterEqual(report.margin, -1e-9)

    def test_bound_holds_over_noise_draws(self):
        """
        This method is to test 50 noise draws on a Gaussian design with d = 8, Q = 2,
        n = 2000 and sigma = 0.1, the constants being enumerated once.
        """
        spec = FeatureClusteredSpec(n=2000, n_features=8, n_clusters=2, sigma=0.0, seed=3)
        dataset, w_star = generate_feature_clustered(spec)
        estimate = contraction_constants(dataset.X, 2)
        self.assertTrue(estimate.exact)
        self.assertLess(estimate.rho, 1.0)
        violations = 0
        for seed in range(50):
            report = verify_convergence_bound(dataset.X, w_star, sigma=0.1, n_clusters=2,
                                              n_iter=20, seed=seed, estimate=estimate)
            self.assertFalse(report.diverged)
            violations += report.violations
        self.assertEqual(violations, 0)

    def test_vacuous(self):
        report = verify_convergence_bound(np.zeros((10, 5)), self.w_star, sigma=0.1,
                                          n_clusters=2, n_iter=3)
        self.assertTrue(report.vacuous)
        self.assertEqual(report.violations, 0)

    def test_too_many_values(self):
        with self.assertRaises(ValueError):
            verify_convergence_bound(np.eye(5), np.arange(5.0), sigma=0.0, n_clusters=2,
                                     n_iter=1)
