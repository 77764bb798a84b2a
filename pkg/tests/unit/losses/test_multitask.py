"""
Unit Test Case to the multitask penalty.
"""
import unittest

import numpy as np

from scikit_clustered.exceptions import DimensionError
from scikit_clustered.losses.multitask import (MultitaskPenaltyParams, multitask_penalty,
                                               multitask_penalty_decomposed,
                                               multitask_penalty_grad)
from scikit_clustered.models.partition import Partition


class TestMultitaskPenalty(unittest.TestCase):

    def setUp(self):
        rng = np.random.default_rng(4)
        self.params = MultitaskPenaltyParams(lambda_mean=0.3, lambda_between=1.2,
                                             lambda_within=0.7, n_tasks=5)
        self.partition = Partition.from_labels([0, 1, 0, 2, 1])
        centers = rng.standard_normal((4, 3))
        self.W_tilde = centers[:, self.partition.labels()]
        self.W = self.W_tilde + 0.1 * rng.standard_normal((4, 5))

    def test_decomposition(self):
        """
        This method is to test that the trace form equals the barycenter form on clustered W~.
        """
        self.assertAlmostEqual(multitask_penalty(self.W, self.W_tilde, self.params),
                               multitask_penalty_decomposed(self.W, self.W_tilde,
                                                            self.partition, self.params))

    def test_gradient(self):
        """
        This method is to test both gradients against finite differences.
        """
        grad_W, grad_W_tilde = multitask_penalty_grad(self.W, self.W_tilde, self.params)
        step = 1e-6
        for ix in [(0, 0), (2, 3), (3, 4)]:
            shift = np.zeros_like(self.W)
            shift[ix] = step
            numeric = (multitask_penalty(self.W + shift, self.W_tilde, self.params)
                       - multitask_penalty(self.W - shift, self.W_tilde, self.params)) / (2 * step)
            self.assertAlmostEqual(grad_W[ix], numeric, places=5)
            numeric = (multitask_penalty(self.W, self.W_tilde + shift, self.params)
                       - multitask_penalty(self.W, self.W_tilde - shift, self.params)) / (2 * step)
            self.assertAlmostEqual(grad_W_tilde[ix], numeric, places=5)

    def test_zero_within(self):
        params = MultitaskPenaltyParams(0.0, 0.0, 1.0, 5)
        self.assertEqual(multitask_penalty(self.W_tilde, self.W_tilde, params), 0.0)

    def test_errors(self):
        with self.assertRaises(ValueError):
            MultitaskPenaltyParams(-1.0, 0.0, 0.0, 2)
        with self.assertRaises(ValueError):
            MultitaskPenaltyParams(0.0, 0.0, 0.0, 0)
        with self.assertRaises(DimensionError):
            multitask_penalty(self.W, self.W_tilde[:, :4], self.params)
