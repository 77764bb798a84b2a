"""
Unit Test Case to the convex relaxation and the conditional gradient solver.
"""
import unittest
from unittest import mock

import numpy as np

from scikit_clustered.baselines.least_squares import fit_ls
from scikit_clustered.exceptions import DimensionError
from scikit_clustered.models.clustered import ModelVariant
from scikit_clustered.models.dataset import Dataset
from scikit_clustered.models.partition import Partition, partition_to_equivalence
from scikit_clustered.solvers import conditional_gradient
from scikit_clustered.solvers.conditional_gradient import (ConditionalGradient, PsiProblem,
                                                           cg_fit, linear_oracle,
                                                           psi_gradient, psi_value)
from scikit_clustered.theory.partitions import enumerate_partitions


class BaseRelaxation(unittest.TestCase):

    def setUp(self):
        rng = np.random.default_rng(12)
        self.n, self.d = 200, 6
        self.X = rng.standard_normal((self.n, self.d))
        self.w_star = np.array([1.0, 1.0, 1.0, -1.0, -1.0, -1.0])
        self.y = self.X @ self.w_star + 0.05 * rng.standard_normal(self.n)
        self.dataset = Dataset(X=self.X, y=self.y)
        self.lam = 0.05
        self.feature = PsiProblem(kind="FEATURE_REGRESSION", dataset=self.dataset, lam=self.lam)


class TestPsi(BaseRelaxation):
    """
    Value and gradient of the relaxed objective.
    """

    def ridge_objective(self, w):
        residual = self.y - self.X @ w
        return 0.5 * residual @ residual / self.n + 0.5 * self.lam * w @ w

    def test_identity_is_ridge(self):
        """
        This method is to test that psi at the identity is the optimal ridge objective.
        """
        w = fit_ls(self.dataset, self.lam)
        self.assertAlmostEqual(psi_value(self.feature, np.eye(self.d)), self.ridge_objective(w))

    def test_partition_is_clustered_ridge(self):
        """
        This method is to test that psi at an equivalence matrix is the clustered ridge optimum.
        """
        partition = Partition.from_groups([[0, 1, 2], [3, 4], [5]])
        model, _, _ = cg_fit(self.feature, 3, max_iter=1)
        from_relaxation = psi_value(self.feature, partition_to_equivalence(partition))
        Z = np.zeros((self.d, 3))
        for q, group in enumerate(partition.groups):
            Z[list(group), q] = 1.0
        XZ = self.X @ Z
        v = np.linalg.solve(self.n * self.lam * Z.T @ Z + XZ.T @ XZ, XZ.T @ self.y)
        self.assertAlmostEqual(from_relaxation, self.ridge_objective(Z @ v))
        self.assertEqual(model.variant, ModelVariant.FEATURE)

    def test_gradient(self):
        """
        This method is to test -P against a directional finite difference.
        """
        rng = np.random.default_rng(1)
        cases = [(self.feature, self.d),
                 (PsiProblem(kind="SAMPLE_REGRESSION", dataset=self.dataset, lam=self.lam),
                  self.n)]
        for problem, m in cases:
            with self.subTest(kind=problem.kind):
                M = np.full((m, m), 1.0 / m)
                E = rng.standard_normal((m, m))
                E = (E + E.T) / 2
                step = 1e-6
                numeric = (psi_value(problem, M + step * E)
                           - psi_value(problem, M - step * E)) / (2 * step)
                P = psi_gradient(problem, M).P
                self.assertAlmostEqual(-float(np.sum(P * E)), numeric, places=6)

    def test_sample_gradient(self):
        """
        This method is to test the sample clustered gradient against a finite difference
        along the direction towards a random equivalence matrix.
        """
        rng = np.random.default_rng(4)
        dataset = Dataset(X=self.X[:25], y=self.y[:25])
        problem = PsiProblem(kind="SAMPLE_REGRESSION", dataset=dataset, lam=0.1)
        labels = rng.integers(0, 3, size=25)
        target = partition_to_equivalence(Partition.from_labels(labels)).M
        M = np.full((25, 25), 1.0 / 25)
        for E in (target - M, np.diag(rng.random(25))):
            with self.subTest(trace=float(np.trace(E))):
                step = 1e-6
                numeric = (psi_value(problem, M + step * E)
                           - psi_value(problem, M - step * E)) / (2 * step)
                P = psi_gradient(problem, M).P
                self.assertAlmostEqual(-float(np.sum(P * E)), numeric, places=6)

    def test_convexity(self):
        """
        This method is to test psi at the midpoint of two equivalence matrices against the
        mean of the endpoint values.
        """
        rng = np.random.default_rng(8)
        sample = PsiProblem(kind="SAMPLE_REGRESSION",
                            dataset=Dataset(X=self.X[:30], y=self.y[:30]), lam=0.1)
        for problem, m in ((self.feature, self.d), (sample, 30)):
            for _ in range(5):
                with self.subTest(kind=problem.kind):
                    M1, M2 = (partition_to_equivalence(
                        Partition.from_labels(rng.integers(0, 3, size=m))).M for _ in range(2))
                    middle = psi_value(problem, (M1 + M2) / 2)
                    mean = (psi_value(problem, M1) + psi_value(problem, M2)) / 2
                    self.assertLessEqual(middle, mean + 1e-12)

    def test_shared_solution(self):
        """
        This method is to test psi and its gradient from a precomputed solve.
        """
        M = np.full((self.d, self.d), 1.0 / self.d)
        solution = conditional_gradient._solve_system(self.feature, M)
        self.assertAlmostEqual(psi_value(self.feature, M, solution), psi_value(self.feature, M))
        np.testing.assert_allclose(psi_gradient(self.feature, M, solution).P,
                                   psi_gradient(self.feature, M).P)

    def test_problem_errors(self):
        with self.assertRaises(ValueError):
            PsiProblem(kind="FEATURE_REGRESSION", dataset=self.dataset, lam=0.0)
        with self.assertRaises(DimensionError):
            PsiProblem(kind="FEATURE_CLASSIFICATION", dataset=self.dataset, lam=1.0)
        with self.assertRaises(NameError):
            PsiProblem(kind="TASK_REGRESSION", dataset=self.dataset, lam=1.0)
        with self.assertRaises(DimensionError):
            self.feature.kernel(np.eye(3))

    def test_binary_targets(self):
        """
        This method is to test the one-hot expansion of binary labels.
        """
        labels = (self.y > 0).astype(float)
        dataset = Dataset(X=self.X, y=labels, task="CLASSIFICATION")
        problem = PsiProblem(kind="SAMPLE_CLASSIFICATION", dataset=dataset, lam=1.0)
        np.testing.assert_array_equal(problem.targets.sum(axis=1), np.ones(self.n))
        self.assertEqual(problem.gram.shape, (self.n, self.n))


class TestLinearOracle(unittest.TestCase):

    def test_rank_one(self):
        """
        This method is to test the oracle on a rank one gradient.
        """
        oracle = linear_oracle(np.array([1.0, 1.0, 5.0, 5.0]), 2)
        self.assertEqual(oracle.partition.groups, ((0, 1), (2, 3)))
        np.testing.assert_allclose(oracle.M[0], [0.5, 0.5, 0.0, 0.0])

    def test_matrix_input(self):
        b = np.array([1.0, 1.0, 5.0, 5.0])
        oracle = linear_oracle(np.outer(b, b), 2)
        self.assertEqual(oracle.partition.groups, ((0, 1), (2, 3)))
        with self.assertRaises(DimensionError):
            linear_oracle(np.ones((2, 3)), 2)


class TestConditionalGradient(BaseRelaxation):

    def test_gap_certificate(self):
        """
        This method is to test that the gap bounds the distance to the relaxed optimum.
        """
        _, _, trace = cg_fit(self.feature, 2, epsilon=0.0, max_iter=60)
        best = min(state.psi for state in trace)
        for state in trace:
            self.assertGreaterEqual(state.gap, -1e-10)
            self.assertLessEqual(state.psi - best, state.gap + 1e-10)

    def test_gap_bounds_every_partition(self):
        """
        This method is to test gap_t >= psi(M_t) - min psi over all the equivalence matrices
        with at most Q groups, enumerated.
        """
        dataset = Dataset(X=self.X[:, :5], y=self.X[:, :5] @ [1.0, 1.0, -1.0, -1.0, 0.5])
        problem = PsiProblem(kind="FEATURE_REGRESSION", dataset=dataset, lam=self.lam)
        for n_clusters in (2, 3):
            with self.subTest(n_clusters=n_clusters):
                best = min(psi_value(problem, partition_to_equivalence(partition))
                           for partition in enumerate_partitions(5, n_clusters, "AT_MOST"))
                _, _, trace = cg_fit(problem, n_clusters, epsilon=0.0, max_iter=30, n_init=10)
                for state in trace:
                    self.assertGreaterEqual(state.gap, state.psi - best - 1e-10)

    def test_one_factorization_per_iteration(self):
        """
        This method is to test that each oracle call solves the linear system once.
        """
        with mock.patch.object(conditional_gradient, "_solve_system",
                               wraps=conditional_gradient._solve_system) as solve:
            _, _, trace = cg_fit(self.feature, 2, epsilon=0.0, max_iter=10)
        self.assertEqual(solve.call_count, len(trace))

    def test_all_groups_is_ridge(self):
        """
        This method is to test that Q = d rounds to the ridge solution.
        """
        model, partition, _ = cg_fit(self.feature, self.d, max_iter=50)
        self.assertEqual(partition.n_groups, self.d)
        np.testing.assert_allclose(model.weights(), fit_ls(self.dataset, self.lam), atol=1e-8)

    def test_recovers_two_groups(self):
        model, partition, _ = cg_fit(self.feature, 2)
        self.assertEqual(partition.groups, ((0, 1, 2), (3, 4, 5)))
        self.assertEqual(len(model.values), 2)

    def test_sample_relaxation(self):
        rng = np.random.default_rng(3)
        labels = np.arange(30) % 2
        experts = np.array([[2.0, -2.0], [1.0, 1.0]])
        X = rng.standard_normal((30, 2))
        dataset = Dataset(X=X, y=np.einsum("ij,ji->i", X, experts[:, labels]))
        problem = PsiProblem(kind="SAMPLE_REGRESSION", dataset=dataset, lam=1e-2)
        model, partition, trace = cg_fit(problem, 2, max_iter=30)
        self.assertEqual(model.variant, ModelVariant.SAMPLE)
        self.assertLessEqual(partition.n_groups, 2)
        self.assertEqual(model.values.shape[0], 2)
        self.assertEqual([state.t for state in trace], list(range(len(trace))))

    def test_best_oracle_rounding(self):
        """
        This method is to test rounding on the oracle partition of smallest psi.
        """
        sample = PsiProblem(kind="SAMPLE_REGRESSION",
                            dataset=Dataset(X=self.X[:40], y=self.y[:40]), lam=0.1)
        for problem in (self.feature, sample):
            with self.subTest(kind=problem.kind):
                _, last, trace = cg_fit(problem, 2, max_iter=15)
                model, best, again = cg_fit(problem, 2, max_iter=15, rounding="best-oracle")
                self.assertEqual([state.partition for state in trace],
                                 [state.partition for state in again])
                scores = [psi_value(problem, partition_to_equivalence(state.partition))
                          for state in trace]
                best_psi = psi_value(problem, partition_to_equivalence(best))
                self.assertAlmostEqual(best_psi, min(scores))
                self.assertLessEqual(best_psi,
                                     psi_value(problem, partition_to_equivalence(last)) + 1e-12)
                self.assertEqual(model.partition, best)

    def test_errors(self):
        with self.assertRaises(ValueError):
            cg_fit(self.feature, 0)
        with self.assertRaises(ValueError):
            cg_fit(self.feature, 2, max_iter=0)
        with self.assertRaises(NameError):
            cg_fit(self.feature, 2, rounding="RANDOM")


class TestConditionalGradientSolver(BaseRelaxation):

    def test_refinement(self):
        """
        This method is to test the report and the projected gradient refinement.
        """
        solver = ConditionalGradient(self.dataset)
        solver.config(variant="FEATURE", n_clusters=2, lam=self.lam, refine="PGD",
                      refine_lam=0.0)
        model, report = solver.fit()
        self.assertEqual(len(report.gap_trace), report.iterations)
        np.testing.assert_allclose(model.weights(), self.w_star, atol=0.05)

    def test_config_errors(self):
        solver = ConditionalGradient(self.dataset)
        with self.assertRaises(NameError):
            solver.config(variant="MULTITASK")
        with self.assertRaises(NameError):
            solver.config(variant="FEATURE", refine="AM")
        with self.assertRaises(NameError):
            solver.config(variant="FEATURE", rounding="FIRST_ORACLE")
        with self.assertRaises(SystemError):
            solver.fit()
