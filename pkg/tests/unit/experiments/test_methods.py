"""
Unit Test Case to the compared methods and their cross-validation.
"""
import unittest

import numpy as np

from scikit_clustered.exceptions import CrossValidationError
from scikit_clustered.experiments.cross_validation import CVConfig, cross_validate
from scikit_clustered.experiments.methods import Method, fit_method, method, score_fit
from scikit_clustered.models.dataset import Dataset


class BaseMethods(unittest.TestCase):

    def setUp(self):
        rng = np.random.default_rng(10)
        self.X = rng.standard_normal((60, 6))
        self.w_star = np.array([1.0, 1.0, 1.0, -1.0, -1.0, -1.0])
        self.dataset = Dataset(X=self.X, y=self.X @ self.w_star)


class TestMethods(BaseMethods):

    def test_names(self):
        self.assertEqual(method("pg-am"), Method.PG_AM)
        self.assertEqual(method("CG+AM"), Method.CG_AM)
        with self.assertRaises(NameError):
            method("RF")

    def test_feature_methods(self):
        """
        This method is to test that every feature method recovers noiseless weights.
        """
        for name in ("LS", "LSK", "PG", "CGPG"):
            with self.subTest(name=name):
                lam = 1e-3 if name.startswith("CG") else 0.0
                fit = fit_method(name, self.dataset, lam=lam, n_clusters=2)
                np.testing.assert_allclose(fit.weights, self.w_star, atol=0.05)
                self.assertLess(score_fit(fit, self.dataset), 1e-2)

    def test_sparse_default(self):
        fit = fit_method("IHT", self.dataset)
        self.assertLessEqual(np.count_nonzero(fit.weights), 3)

    def test_sample_method(self):
        """
        This method is to test the experts of alternating minimization and their scores.
        """
        fit = fit_method("AM", self.dataset, n_clusters=2, lam=1e-6)
        self.assertIsNone(fit.weights)
        self.assertEqual(fit.experts.shape[0], 6)
        self.assertGreaterEqual(score_fit(fit, self.dataset), 0.0)
        self.assertGreaterEqual(score_fit(fit, self.dataset, "mse"), 0.0)
        with self.assertRaises(NameError):
            score_fit(fit, self.dataset, "R2")


class TestCrossValidation(BaseMethods):

    def test_grid(self):
        """
        This method is to test the sorted grid and the choice of the best point.
        """
        config = CVConfig(folds=3, lambdas=(100.0, 0.0, 1.0, 0.0))
        self.assertEqual(config.lambdas, (0.0, 1.0, 100.0))
        result = cross_validate(self.dataset, "LS", config, seed=1)
        self.assertEqual(result.lam, 0.0)
        self.assertEqual(len(result.scores), 3)
        self.assertTrue(np.all(np.diff(result.scores["MEAN"].to_numpy()) > 0))
        self.assertEqual(result.to_dict()["best"]["lambda"], 0.0)

    def test_deterministic(self):
        config = CVConfig(folds=3, lambdas=(1e-3, 1e-1), n_clusters=(2, 3))
        first = cross_validate(self.dataset, "LSK", config, seed=3, n_jobs=1)
        second = cross_validate(self.dataset, "LSK", config, seed=3, n_jobs=2)
        np.testing.assert_allclose(first.scores["MEAN"], second.scores["MEAN"])

    def test_every_fit_fails(self):
        """
        This method is to test the error raised when no grid point can be fitted.
        """
        with self.assertRaises(CrossValidationError):
            cross_validate(self.dataset, "CG", CVConfig(folds=2, lambdas=(0.0,)))

    def test_config_errors(self):
        with self.assertRaises(ValueError):
            CVConfig(folds=1)
        with self.assertRaises(ValueError):
            CVConfig(lambdas=(-1.0,))
        with self.assertRaises(ValueError):
            cross_validate(self.dataset.subset([0, 1]), "LS", CVConfig(folds=3))
