import math
from unittest import TestCase
import unittest.mock as mock

import numpy as np

from hyperball import classify, families, group, linalg
from hyperball.classify import Kind, Location, Method
from hyperball.exceptions import BadBasis, NoConvergence, NotReducing, NotUnitary

from .utils import random_element


def diagonal_element(r, xi=0.75, theta=0.0):
    """U = diag(r, 1) acting on xi = (xi, 0)."""
    return group.make(theta, np.diag([r, 1.0]), [xi, 0.0])


class PredicateTests(TestCase):
    def test_unitary(self):
        self.assertTrue(classify.is_unitary_elem(group.from_unitary(linalg.random_unitary(3, 1))))
        self.assertFalse(classify.is_unitary_elem(diagonal_element(1.0)))

    def test_normal(self):
        self.assertTrue(classify.is_normal_elem(diagonal_element(1.0)))
        self.assertTrue(classify.is_normal_elem(random_element('normal', 8, seed=4)))
        self.assertFalse(classify.is_normal_elem(diagonal_element(1j)))

    def test_normal_agrees_with_commutator(self):
        for s in range(10):
            T = random_element('uniform', 4, seed=s)
            scale = max(1.0, linalg.max_abs(T.matrix))
            commuting = classify.commutator_residual(T) <= 1e-10 * scale ** 2
            self.assertEqual(classify.is_normal_elem(T), commuting)

    def test_disagreement_is_logged(self):
        with mock.patch('hyperball.classify.commutator_residual', return_value=1.0), \
                mock.patch.object(classify.logger, 'warning') as warning:
            self.assertTrue(classify.is_normal_elem(diagonal_element(1.0)))
        warning.assert_called_once()

    def test_self_adjoint(self):
        self.assertTrue(classify.is_self_adjoint_elem(diagonal_element(1.0)))
        self.assertTrue(classify.is_self_adjoint_elem(diagonal_element(1.0, theta=math.pi)))
        self.assertFalse(classify.is_self_adjoint_elem(diagonal_element(1.0, theta=math.pi / 2)))
        self.assertTrue(classify.is_self_adjoint_elem(random_element('selfadjoint', 8, seed=2)))

    def test_involutory(self):
        self.assertTrue(classify.is_involutory_elem(diagonal_element(-1.0)))
        self.assertTrue(classify.is_involutory_elem(random_element('involutory', 8, seed=2)))
        self.assertFalse(classify.is_involutory_elem(diagonal_element(1.0)))

    def test_exclusivity(self):
        for family in families.Family:
            for n in (2, 8, 32):
                T = random_element(family, n, seed=n)
                normal = classify.is_normal_elem(T)
                if classify.is_unitary_elem(T) or classify.is_self_adjoint_elem(T):
                    self.assertTrue(normal, (family, n))
                if classify.is_involutory_elem(T):
                    self.assertFalse(normal, (family, n))


class ReducingSpectrumTests(TestCase):
    def test_normal_spectrum(self):
        spectrum = classify.reducing_spectrum(diagonal_element(1.0))
        self.assertAlmostEqual(spectrum.lambda1, 2.0, places=12)
        self.assertAlmostEqual(spectrum.lambda2, 0.5, places=12)
        self.assertAlmostEqual(spectrum.k1, 4 / 3, places=12)
        self.assertAlmostEqual(spectrum.k2, -4 / 3, places=12)
        self.assertAlmostEqual(spectrum.discriminant, 2.25, places=12)

    def test_double_root(self):
        spectrum = classify.reducing_spectrum(diagonal_element(0.28 + 0.96j))
        self.assertTrue(spectrum.double)
        self.assertLessEqual(abs(spectrum.discriminant), 1e-12)
        self.assertLessEqual(abs(spectrum.k1 - complex(-0.8, 16 / 15)), 1e-10)
        self.assertEqual(spectrum.k1, spectrum.k2)

    def test_products(self):
        T = random_element('reducing', 8, seed=5)
        spectrum = classify.reducing_spectrum(T)
        size = linalg.norm(T.xi)
        self.assertLessEqual(abs(spectrum.lambda1 * spectrum.lambda2 - spectrum.r), 1e-10)
        self.assertLessEqual(abs(abs(spectrum.k1) * size * abs(spectrum.k2) * size - 1.0), 1e-10)

    def test_phase_ignored(self):
        plain = classify.reducing_spectrum(diagonal_element(1j))
        rotated = classify.reducing_spectrum(diagonal_element(1j, theta=2.0))
        self.assertAlmostEqual(plain.lambda1, rotated.lambda1, places=14)

    def test_not_reducing(self):
        with self.assertRaises(NotReducing):
            classify.reducing_spectrum(group.identity(2))
        U = linalg.random_unitary(3, 0)
        with self.assertRaises(NotReducing):
            classify.reducing_spectrum(group.make(0.0, U, [0.5, 0.0, 0.0]))


class DynamicalTypeTests(TestCase):
    def test_normal_is_hyperbolic(self):
        result = classify.dynamical_type(diagonal_element(1.0))
        self.assertIs(result.kind, Kind.hyperbolic)
        self.assertIs(result.method, Method.closed_form)
        points = [rec.point for rec in result.fixed_points]
        np.testing.assert_allclose(points, [[1, 0], [-1, 0]], atol=1e-12)
        self.assertTrue(all(rec.location is Location.boundary for rec in result.fixed_points))
        np.testing.assert_allclose([rec.eigenvalue for rec in result.fixed_points], [2.0, 0.5], atol=1e-12)

    def test_involutory_is_elliptic(self):
        result = classify.dynamical_type(diagonal_element(-1.0))
        self.assertIs(result.kind, Kind.elliptic)
        self.assertEqual(len(result.fixed_points), 1)
        record = result.fixed_points[0]
        self.assertIs(record.location, Location.interior)
        np.testing.assert_allclose(record.point, [-1 / 3, 0], atol=1e-12)

    def test_parabolic(self):
        result = classify.dynamical_type(diagonal_element(0.28 + 0.96j))
        self.assertIs(result.kind, Kind.parabolic)
        self.assertEqual(len(result.fixed_points), 1)
        self.assertAlmostEqual(linalg.norm(result.fixed_points[0].point), 1.0, places=10)

    def test_parabolic_family(self):
        rng = np.random.default_rng(0)
        for n in (2, 8, 32):
            T = families.parabolic_element(n, 1.25, 1, rng, theta=0.4)
            self.assertIs(classify.dynamical_type(T).kind, Kind.parabolic)

    def test_unitary_fixes_origin(self):
        result = classify.dynamical_type(group.from_unitary(linalg.random_unitary(3, 3)))
        self.assertIs(result.kind, Kind.elliptic)
        np.testing.assert_array_equal(result.fixed_points[0].point, np.zeros(3))

    def test_independent_of_phase(self):
        T = random_element('reducing', 4, seed=8)
        rotated = group.compose(group.center(0.9, 4), T)
        self.assertIs(classify.dynamical_type(T).kind, classify.dynamical_type(rotated).kind)

    def test_fixed_points_are_fixed(self):
        T = random_element('reducing', 4, seed=9)
        for record in classify.fixed_points(T):
            self.assertLessEqual(linalg.norm(T.act(record.point) - record.point), 1e-7)

    def test_fixed_point_residuals_across_families(self):
        for family in ('normal', 'selfadjoint', 'involutory', 'reducing', 'parabolic', 'unitary'):
            for n in (2, 8, 32):
                T = random_element(family, n, seed=n + 1)
                for record in classify.fixed_points(T):
                    self.assertLessEqual(linalg.norm(T.act(record.point) - record.point), 1e-8, (family, n))

    def test_iteration_agrees_with_closed_form(self):
        T = random_element('normal', 4, seed=1)
        closed = classify.dynamical_type(T)
        iterated = classify.dynamical_type(T, force_iteration=True, maxit=5000)
        self.assertIs(iterated.method, Method.iteration)
        self.assertIs(iterated.kind, closed.kind)
        for record in closed.fixed_points:
            gap = min(linalg.norm(record.point - other.point) for other in iterated.fixed_points)
            self.assertLessEqual(gap, 1e-6)

    def test_undetermined_without_convergence(self):
        # an elliptic rotation about a point other than the origin
        rotation = group.from_unitary(np.diag(np.exp(1j * np.array([1.0, math.sqrt(2.0)]))))
        move = group.from_point([0.3, 0.2j])
        T = group.compose(group.inverse(move), group.compose(rotation, move))
        result = classify.dynamical_type(T, force_iteration=True, maxit=50, restarts=2)
        self.assertIs(result.kind, Kind.undetermined)
        self.assertEqual(result.fixed_points, ())


class IterationTests(TestCase):
    def test_attracting_boundary_point(self):
        record = classify.iterate_to_fixed_point(diagonal_element(1.0), np.zeros(2))
        self.assertIs(record.location, Location.boundary)
        np.testing.assert_allclose(record.point, [1, 0], atol=1e-8)

    def test_interior_start_on_fixed_point(self):
        record = classify.iterate_to_fixed_point(diagonal_element(-1.0), np.array([-1 / 3, 0.0]))
        self.assertIs(record.location, Location.interior)

    def test_period_two(self):
        with self.assertRaises(NoConvergence):
            classify.iterate_to_fixed_point(diagonal_element(-1.0), np.zeros(2))

    def test_budget(self):
        with self.assertRaises(NoConvergence):
            classify.iterate_to_fixed_point(diagonal_element(1.0), np.zeros(2), maxit=3)


class ReductionTests(TestCase):
    def test_reducing_line(self):
        T = random_element('reducing', 6, seed=2)
        self.assertTrue(classify.reduces(T, [T.xi / linalg.norm(T.xi)]))

    def test_generic_element_does_not_reduce(self):
        T = random_element('uniform', 6, seed=2)
        self.assertFalse(classify.reduces(T, [T.xi / linalg.norm(T.xi)]))

    def test_bad_basis(self):
        with self.assertRaises(BadBasis):
            classify.reduces(diagonal_element(1.0), [np.array([1.0, 1.0])])


class UnitaryEquivalenceTests(TestCase):
    def test_minus_identity(self):
        T = group.make(0.0, np.eye(3), [0.2, 0.5j, -0.1])
        self.assertTrue(classify.check_unitary_equiv_inverse(T, -np.eye(3)))

    def test_phase_breaks_equivalence(self):
        T = group.make(math.pi / 2, np.eye(3), [0.2, 0.5j, -0.1])
        self.assertFalse(classify.check_unitary_equiv_inverse(T, -np.eye(3)))

    def test_not_unitary(self):
        with self.assertRaises(NotUnitary):
            classify.check_unitary_equiv_inverse(diagonal_element(1.0), 2 * np.eye(2))
