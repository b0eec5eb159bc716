from unittest import TestCase

import numpy as np
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from hyperball import group, linalg
from hyperball.exceptions import DimError, NoConvergence, NotHermitian, NotPositive


class InnerProductTests(TestCase):
    def test_conjugate_linear_in_second_slot(self):
        x = np.array([1 + 2j, -1j])
        y = np.array([0.5, 2 - 1j])
        self.assertAlmostEqual(linalg.inner(2j * x, y), 2j * linalg.inner(x, y))
        self.assertAlmostEqual(linalg.inner(x, 2j * y), -2j * linalg.inner(x, y))

    def test_example(self):
        self.assertEqual(linalg.inner([1j, 0], [1, 0]), 1j)

    def test_dimension_mismatch(self):
        with self.assertRaises(DimError):
            linalg.inner([1, 0], [1, 0, 0])

    def test_non_finite_input_rejected(self):
        with self.assertRaises(ValueError):
            linalg.as_vector([1.0, float('nan')])

    def test_adjoint(self):
        m = np.array([[1, 2j], [3, 4 - 1j]])
        np.testing.assert_array_equal(linalg.adjoint(m), np.array([[1, 3], [-2j, 4 + 1j]]))


class RankOneUpdateTests(TestCase):
    def test_zero_xi_gives_identity(self):
        np.testing.assert_array_equal(linalg.rank_one_update(0.5, np.zeros(3)), np.eye(3))

    def test_action(self):
        xi = np.array([1.0, 1j])
        x = np.array([2.0, -1.0])
        expected = x + 0.25 * np.vdot(xi, x) * xi
        np.testing.assert_allclose(linalg.rank_one_update(0.25, xi) @ x, expected, atol=1e-15)


class RandomUnitaryTests(TestCase):
    def test_unitary(self):
        for n in (1, 2, 8, 32):
            self.assertLessEqual(linalg.unitarity_residual(linalg.random_unitary(n, 11)), 1e-12)

    def test_deterministic_per_seed(self):
        np.testing.assert_array_equal(linalg.random_unitary(4, 7), linalg.random_unitary(4, 7))
        self.assertFalse(np.array_equal(linalg.random_unitary(4, 7), linalg.random_unitary(4, 8)))

    def test_accepts_generator(self):
        rng = np.random.default_rng(3)
        first = linalg.random_unitary(3, rng)
        second = linalg.random_unitary(3, rng)
        self.assertFalse(np.array_equal(first, second))

    def test_rejects_empty(self):
        with self.assertRaises(DimError):
            linalg.random_unitary(0, 1)


class HermitianEigTests(TestCase):
    def test_two_by_two(self):
        values, vectors = linalg.hermitian_eig(np.array([[2, 1j], [-1j, 2]]))
        np.testing.assert_allclose(values, [3, 1], atol=1e-12)
        self.assertLessEqual(linalg.unitarity_residual(vectors), 1e-12)

    def test_not_hermitian(self):
        with self.assertRaises(NotHermitian):
            linalg.hermitian_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_positive_sqrt(self):
        m = np.array([[2.0, 1.0], [1.0, 2.0]])
        root = linalg.positive_sqrt(m)
        np.testing.assert_allclose(root @ root, m, atol=1e-10)

    def test_positive_sqrt_rejects_indefinite(self):
        with self.assertRaises(NotPositive):
            linalg.positive_sqrt(np.diag([1.0, -1.0]))

    def test_subnormal_off_diagonal(self):
        values, vectors = linalg.hermitian_eig(np.array([[1.0, 1e-310], [1e-310, 2.0]]))
        np.testing.assert_allclose(values, [2, 1], atol=1e-15)
        self.assertTrue(np.all(np.isfinite(vectors)))

    def test_finite_on_many_inputs(self):
        for s in range(50):
            rng = np.random.default_rng([s, 8])
            z = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
            h = (z + z.conj().T) / 2.0
            values, vectors = linalg.hermitian_eig(h)
            self.assertTrue(np.all(np.isfinite(values)) and np.all(np.isfinite(vectors)), s)
            self.assertLessEqual(linalg.max_abs(h @ vectors - vectors * values), 1e-10 * np.linalg.norm(h))

    def test_rank_one_update_spectrum(self):
        for n in (2, 8, 32):
            xi = 0.75 * linalg.random_unit_vector(n, n)
            values, _ = linalg.hermitian_eig(linalg.rank_one_update(1.0, xi))
            np.testing.assert_allclose(values, np.r_[1.5625, np.ones(n - 1)], atol=1e-10)

    def test_positive_sqrt_matches_closed_form(self):
        for n in (2, 8, 32):
            xi = 1.5 * linalg.random_unit_vector(n, n + 1)
            root = linalg.positive_sqrt(linalg.rank_one_update(1.0, xi))
            self.assertLessEqual(linalg.max_abs(root - group.make(0.0, np.eye(n), xi).A), 1e-10)

    @seed(1)
    @settings(max_examples=30, deadline=None)
    @given(seed_=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 8))
    def test_residual_and_order(self, seed_, n):
        rng = np.random.default_rng(seed_)
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = (z + z.conj().T) / 2.0
        values, vectors = linalg.hermitian_eig(h)
        scale = np.linalg.norm(h)
        self.assertLessEqual(linalg.max_abs(h @ vectors - vectors * values), 1e-10 * scale)
        self.assertLessEqual(linalg.unitarity_residual(vectors), 1e-10)
        self.assertTrue(np.all(np.diff(values.real) <= 0))


class Eig2x2Tests(TestCase):
    def test_diagonal(self):
        values, vectors = linalg.eig_2x2(np.diag([2.0, 1.0]))
        np.testing.assert_allclose(values, [2, 1])
        np.testing.assert_allclose(np.abs(vectors), np.eye(2))

    def test_defective(self):
        result = linalg.eig_2x2(np.array([[1.0, 1.0], [0.0, 1.0]]))
        self.assertTrue(result.defective)
        np.testing.assert_allclose(result.values, [1, 1])
        self.assertEqual(result.vectors.shape, (2, 1))

    def test_eigenpairs(self):
        m = np.array([[1 + 1j, 2.0], [0.5j, -1.0]])
        values, vectors = linalg.eig_2x2(m)
        for i in range(2):
            np.testing.assert_allclose(m @ vectors[:, i], values[i] * vectors[:, i], atol=1e-12)

    def test_shape_checked(self):
        with self.assertRaises(DimError):
            linalg.eig_2x2(np.eye(3))


class PowerIterationTests(TestCase):
    def test_dominant_eigenvalue(self):
        lam, v = linalg.power_iteration(np.diag([3.0, 1.0]), tol=1e-12)
        self.assertAlmostEqual(lam, 3.0, places=9)
        self.assertAlmostEqual(abs(v[0]), 1.0, places=9)

    def test_no_dominant_eigenvalue(self):
        with self.assertRaises(NoConvergence):
            linalg.power_iteration(np.diag([1.0, -1.0]), maxit=100)

    def test_normal_element(self):
        T = group.make(0.0, np.eye(2), [0.75, 0.0])
        lam, v = linalg.power_iteration(T.matrix, tol=1e-12)
        self.assertAlmostEqual(lam, 2.0, places=9)
        np.testing.assert_allclose(np.abs(v), [np.sqrt(0.5), 0.0, np.sqrt(0.5)], atol=1e-9)

    def test_unitary_input(self):
        with self.assertRaises(NoConvergence):
            linalg.power_iteration(group.from_unitary(np.diag([1j, -1.0])).matrix, maxit=500)
