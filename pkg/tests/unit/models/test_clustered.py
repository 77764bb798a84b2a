"""
Unit Test Case to the clustered linear models and the hyperparameters.
"""
import unittest

import numpy as np

from scikit_clustered.exceptions import DimensionError
from scikit_clustered.models.clustered import (ClusteredLinearModel, ModelVariant,
                                               SparseClusteredModel, cluster_summary,
                                               model_variant)
from scikit_clustered.models.hyperparams import Hyperparams
from scikit_clustered.models.partition import Partition


class TestHyperparams(unittest.TestCase):

    def test_defaults(self):
        hyperparams = Hyperparams()
        self.assertEqual(hyperparams.n_clusters, 2)
        self.assertIsNone(hyperparams.sparsity)
        self.assertEqual(hyperparams.epsilon, 1e-8)

    def test_invalid(self):
        """
        This method is to test the rejection of infeasible and negative values.
        """
        with self.assertRaises(ValueError):
            Hyperparams(n_clusters=0)
        with self.assertRaises(ValueError):
            Hyperparams(n_clusters=3, sparsity=2)
        with self.assertRaises(ValueError):
            Hyperparams(lam=-1.0)
        with self.assertRaises(ValueError):
            Hyperparams(lambda_within=float("nan"))
        with self.assertRaises(ValueError):
            Hyperparams(max_iter=-1)


class TestClusteredLinearModel(unittest.TestCase):
    """
    Feature, sample and multitask models.
    """

    def setUp(self):
        self.w = np.array([0.5, -1.0, 0.5, 2.0, -1.0])

    def test_variant_names(self):
        self.assertEqual(model_variant("feature-class"), ModelVariant.FEATURE_MULTICLASS)
        self.assertEqual(model_variant("sparse"), ModelVariant.SPARSE_FEATURE)
        with self.assertRaises(NameError):
            model_variant("tree")

    def test_feature_from_weights(self):
        """
        This method is to test that equal weights share a group and w = Zv is recovered.
        """
        model = ClusteredLinearModel.from_weights("FEATURE", self.w)
        self.assertEqual(model.n_groups, 3)
        self.assertEqual(model.partition.groups, ((0, 2), (1, 4), (3,)))
        np.testing.assert_array_equal(model.weights(), self.w)
        X = np.arange(10.0).reshape(2, 5)
        np.testing.assert_allclose(model.predict(X), X @ self.w)

    def test_sample_prediction(self):
        """
        This method is to test the size weighted average of the experts.
        """
        partition = Partition.from_groups([[0, 1, 2], [3]])
        experts = np.array([[1.0, 5.0], [0.0, -2.0]])
        model = ClusteredLinearModel(variant="SAMPLE", partition=partition, values=experts)
        X = np.array([[1.0, 1.0]])
        np.testing.assert_allclose(model.predict_all(X), [[1.0, 3.0]])
        np.testing.assert_allclose(model.predict(X), [0.75 * 1.0 + 0.25 * 3.0])

    def test_multitask_weights(self):
        W = np.array([[1.0, 2.0, 1.0], [0.0, 3.0, 0.0]])
        model = ClusteredLinearModel.from_weights(ModelVariant.MULTITASK, W)
        self.assertEqual(model.partition.groups, ((0, 2), (1,)))
        np.testing.assert_array_equal(model.weights(), W)

    def test_intercept(self):
        model = ClusteredLinearModel.from_weights("FEATURE", self.w, intercept=1.5)
        np.testing.assert_allclose(model.predict(np.zeros((1, 5))), [1.5])
        self.assertEqual(model.to_dict()["intercept"], [1.5])

    def test_shape_errors(self):
        partition = Partition.from_groups([[0, 1], [2]])
        with self.assertRaises(DimensionError):
            ClusteredLinearModel(variant="FEATURE", partition=partition, values=[1.0])
        with self.assertRaises(DimensionError):
            ClusteredLinearModel(variant="SAMPLE", partition=partition, values=np.ones((3, 3)))
        with self.assertRaises(NameError):
            ClusteredLinearModel(variant="SPARSE_FEATURE", partition=partition,
                                 values=[1.0, 2.0])


class TestSparseClusteredModel(unittest.TestCase):

    def test_from_weights(self):
        """
        This method is to test the support and the groups of the nonzero weights.
        """
        model = SparseClusteredModel.from_weights(np.array([0.0, 2.0, 0.0, 2.0, -1.0]))
        self.assertEqual(model.support, (1, 3, 4))
        self.assertEqual(model.groups, ((1, 3), (4,)))
        np.testing.assert_array_equal(model.values, [2.0, -1.0])
        self.assertEqual(model.n_groups, 2)

    def test_all_zero(self):
        model = SparseClusteredModel.from_weights(np.zeros(3))
        self.assertEqual(model.support, ())
        self.assertEqual(model.to_dict()["groups"], [])


class TestClusterSummary(unittest.TestCase):

    def test_feature_order(self):
        """
        This method is to test that the groups come by decreasing magnitude of their value.
        """
        model = ClusteredLinearModel.from_weights("FEATURE", np.array([0.1, -3.0, 0.1, 1.0]))
        summary = cluster_summary(model, feature_names=["a", "b", "c", "d"])
        self.assertListEqual(summary["VALUE"].tolist(), [-3.0, 1.0, 0.1])
        self.assertListEqual(summary["FEATURES"].iloc[2], ["a", "c"])

    def test_sparse_zero_group(self):
        model = SparseClusteredModel.from_weights(np.array([0.0, 2.0, 0.0]))
        summary = cluster_summary(model)
        self.assertListEqual(summary["SIZE"].tolist(), [1, 2])
        self.assertEqual(summary["VALUE"].iloc[1], 0.0)

    def test_sample_model_rejected(self):
        model = ClusteredLinearModel(variant="SAMPLE", partition=Partition.single(2),
                                     values=np.ones((2, 1)))
        with self.assertRaises(NameError):
            cluster_summary(model)
