"""
Unit Test Case to the Dataset model and its CSV input/output.
"""
import os
import tempfile
import unittest

import numpy as np
import pandas as pd

from scikit_clustered.exceptions import DimensionError
from scikit_clustered.models.dataset import Dataset, load_csv, save_csv


class TestDataset(unittest.TestCase):
    """
    Validation of the Dataset.
    """

    def setUp(self):
        rng = np.random.default_rng(3)
        self.X = rng.standard_normal((6, 3))
        self.y = rng.standard_normal(6)

    def test_properties(self):
        dataset = Dataset(X=self.X, y=self.y)
        self.assertEqual(dataset.n_samples, 6)
        self.assertEqual(dataset.n_features, 3)
        self.assertEqual(dataset.n_outputs, 1)
        self.assertEqual(dataset.feature_names, ("x0", "x1", "x2"))

    def test_arrays_are_frozen(self):
        """
        This method is to test that the stored arrays are copies that can not be written.
        """
        dataset = Dataset(X=self.X, y=self.y)
        self.X[0, 0] = 100.0
        self.assertNotEqual(dataset.X[0, 0], 100.0)
        with self.assertRaises(ValueError):
            dataset.X[0, 0] = 1.0

    def test_shape_errors(self):
        """
        This method is to test the rejection of mismatched labels and bad names.
        """
        with self.assertRaises(DimensionError):
            Dataset(X=self.X, y=self.y[:5])
        with self.assertRaises(DimensionError):
            Dataset(X=self.X[0], y=self.y[:1])
        with self.assertRaises(DimensionError):
            Dataset(X=self.X, y=self.y, feature_names=("a", "b"))

    def test_non_finite(self):
        X = self.X.copy()
        X[1, 1] = np.nan
        with self.assertRaises(ValueError):
            Dataset(X=X, y=self.y)

    def test_classification_labels(self):
        """
        This method is to test that classification labels must be 0/1 or one-hot.
        """
        with self.assertRaises(ValueError):
            Dataset(X=self.X, y=np.arange(6), task="CLASSIFICATION")
        with self.assertRaises(ValueError):
            Dataset(X=self.X, y=np.ones((6, 2)), task="CLASSIFICATION")
        dataset = Dataset(X=self.X, y=np.eye(3)[[0, 1, 2, 0, 1, 2]], task="classification")
        self.assertEqual(dataset.task, "CLASSIFICATION")
        self.assertEqual(dataset.n_outputs, 3)

    def test_unknown_task(self):
        with self.assertRaises(NameError):
            Dataset(X=self.X, y=self.y, task="RANKING")

    def test_subset(self):
        dataset = Dataset(X=self.X, y=self.y).subset([4, 1])
        np.testing.assert_array_equal(dataset.X, self.X[[4, 1]])
        np.testing.assert_array_equal(dataset.y, self.y[[4, 1]])


class TestCSV(unittest.TestCase):
    """
    Reading and writing datasets as CSV.
    """

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.path = os.path.join(self.directory.name, "data.csv")

    def tearDown(self):
        self.directory.cleanup()

    def test_regression_round_trip(self):
        """
        This method is to test that a saved dataset is read back exactly.
        """
        rng = np.random.default_rng(0)
        dataset = Dataset(X=rng.standard_normal((5, 2)), y=rng.standard_normal(5),
                          feature_names=("age", "size"))
        save_csv(dataset, self.path, target="price")
        loaded = load_csv(self.path, target="price")
        np.testing.assert_array_equal(loaded.X, dataset.X)
        np.testing.assert_array_equal(loaded.y, dataset.y)
        self.assertEqual(loaded.feature_names, ("age", "size"))

    def test_classification(self):
        """
        This method is to test the binary and one-hot encodings of text labels.
        """
        pd.DataFrame({"a": [0.0, 1.0, 2.0, 3.0], "label": ["no", "yes", "no", "yes"]}) \
            .to_csv(self.path, index=False)
        binary = load_csv(self.path, target="label", task="CLASSIFICATION")
        self.assertListEqual(binary.y.tolist(), [0.0, 1.0, 0.0, 1.0])

        pd.DataFrame({"a": [0.0, 1.0, 2.0], "label": ["r", "g", "b"]}) \
            .to_csv(self.path, index=False)
        multiclass = load_csv(self.path, target="label", task="CLASSIFICATION")
        self.assertEqual(multiclass.y.shape, (3, 3))
        np.testing.assert_array_equal(multiclass.y[0], [0, 0, 1])

    def test_missing_target(self):
        pd.DataFrame({"a": [1.0], "b": [2.0]}).to_csv(self.path, index=False)
        with self.assertRaises(KeyError):
            load_csv(self.path, target="y")
