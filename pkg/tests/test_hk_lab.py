import unittest
from fractions import Fraction

import numpy as np

from frobenius_lab.exceptions import DomainError
from frobenius_lab.hk_lab import (
    BoundConstants,
    basic_lengths_check,
    check_socle_pair,
    filtration_length,
    frobenius_length,
    hk_sequence,
    hypersurface_bound,
    nilpotency_exponent,
    random_socle_instance,
    sequence_bounds,
    verify_bounds,
    verify_filtered_bound,
    verify_pair_bound,
)
from frobenius_lab.ideals import Budget, IdealBasis
from frobenius_lab.local_ring import LocalRingPresentation
from frobenius_lab.polynomials import make_ring
from frobenius_lab.testing_utils import EXAMPLE_SUITE, example, random_polynomial

REGULAR_RINGS = (('x', ''), ('x, y', ''), ('x, y, z', ''), ('x, y', 'y - x^2'))


class SequenceBoundsTests(unittest.TestCase):
    def test_node_prefix(self):
        bounds = sequence_bounds([(1, Fraction(5, 3)), (2, Fraction(17, 9))], 3)
        self.assertEqual(bounds.constant, Fraction(2, 3))
        self.assertEqual(bounds.interval, (Fraction(16, 9), Fraction(2)))
        self.assertEqual(bounds.stabilization_index, 2)

    def test_constant_sequence(self):
        bounds = sequence_bounds([(1, Fraction(1)), (2, Fraction(1))], 5)
        self.assertEqual(bounds.constant, 0)
        self.assertEqual(bounds.interval, (1, 1))
        self.assertEqual(bounds.stabilization_index, 1)

    def test_empty(self):
        self.assertIsNone(sequence_bounds([], 3))


class HKSequenceTests(unittest.TestCase):
    def test_node(self):
        report = hk_sequence(example('node'), 3)
        self.assertEqual(
            [s.value for s in report.samples],
            [Fraction(5, 3), Fraction(17, 9), Fraction(53, 27)],
        )
        self.assertEqual(report.d, 1)
        self.assertEqual(report.empirical_C, Fraction(2, 3))
        self.assertEqual(report.ehk_interval, (Fraction(52, 27), Fraction(2)))
        self.assertEqual(report.stabilization_index, 3)
        self.assertFalse(report.truncated)

    def test_threads_give_the_same_report(self):
        serial = hk_sequence(example('node'), 2)
        threaded = hk_sequence(example('node'), 2, threads=2)
        self.assertEqual(serial.to_dict(), threaded.to_dict())

    def test_regular(self):
        report = hk_sequence(example('line'), 2)
        self.assertEqual([s.value for s in report.samples], [1, 1])
        self.assertEqual(report.empirical_C, 0)

    def test_budget_truncates(self):
        report = hk_sequence(example('node'), 2, Budget(max_pairs=0))
        self.assertTrue(report.truncated)
        self.assertEqual(report.samples, [])
        self.assertIn('critical pairs', report.error)
        self.assertIsNone(report.ehk_interval)

    def test_e_max(self):
        with self.assertRaises(DomainError):
            hk_sequence(example('node'), 0)

    def test_to_dict(self):
        record = hk_sequence(example('node'), 1).to_dict()
        self.assertEqual(record['presentation'], 'node')
        self.assertEqual(record['samples'][0]['lambda'], Fraction(5, 3))
        self.assertEqual(record['samples'][0]['colength'], 5)

    def test_regular_rings(self):
        for p in (2, 3, 5):
            for variables, generators in REGULAR_RINGS:
                P = LocalRingPresentation.from_text(make_ring(p, variables), generators)
                report = hk_sequence(P, 3)
                self.assertEqual([s.value for s in report.samples], [1, 1, 1], (p, variables))
                self.assertEqual(report.ehk_interval, (1, 1))

    def test_node_closed_form(self):
        for p in (2, 3, 5):
            P = LocalRingPresentation.from_text(make_ring(p, 'x, y'), 'x*y')
            values = [s.value for s in hk_sequence(P, 3).samples]
            self.assertEqual(values, [Fraction(2 * p**e - 1, p**e) for e in (1, 2, 3)], p)

    def test_intervals_are_nested(self):
        for name in EXAMPLE_SUITE:
            P = example(name)
            e_max = 2 if name.startswith('fermat_cubic') else 3
            longer = hk_sequence(P, e_max)
            for a, b in zip(longer.samples, longer.samples[1:]):
                self.assertLessEqual(P.p**a.e * abs(a.value - b.value), longer.empirical_C)
            if e_max < 3:
                continue
            shorter = hk_sequence(P, e_max - 1)
            self.assertLessEqual(shorter.ehk_interval[0], longer.ehk_interval[0], name)
            self.assertLessEqual(longer.ehk_interval[1], shorter.ehk_interval[1], name)


class SoclePairTests(unittest.TestCase):
    def setUp(self):
        self.P = example('node')
        self.I = IdealBasis.parse(self.P.ring, 'x + y')
        self.u = self.P.ring.parse('x')

    def test_socle_pair(self):
        check_socle_pair(self.P, self.I, self.u)
        with self.assertRaises(DomainError):
            check_socle_pair(self.P, self.I, self.P.ring.parse('1'))

    def test_frobenius_length(self):
        for q in (3, 9):
            self.assertEqual(frobenius_length(self.P, self.I, self.u, q), 1)

    def test_single_bound(self):
        constants = BoundConstants(2, 8, conditional=False)
        entry = verify_pair_bound(self.P, self.I, self.u, 1, 2, constants)
        self.assertEqual(entry.lhs, Fraction(2, 9))
        self.assertEqual(entry.rhs, Fraction(16, 3))
        self.assertTrue(entry.passed)
        with self.assertRaises(DomainError):
            verify_pair_bound(self.P, self.I, self.u, 2, 1, constants)

    def test_violations_are_reported(self):
        check = verify_bounds(self.P, self.I, self.u, 2, BoundConstants(0, 0))
        self.assertEqual([(v.e, v.e_prime) for v in check.violations], [(1, 2)])
        self.assertFalse(check.passed)
        self.assertFalse(check.to_dict()['pass'])

    def test_all_pairs(self):
        check = verify_bounds(self.P, self.I, self.u, 2, BoundConstants(2, 8))
        self.assertEqual([(v.e, v.e_prime) for v in check.entries], [(1, 1), (1, 2), (2, 2)])
        self.assertTrue(check.passed)

    def test_regular_ring(self):
        P = example('plane')
        I = IdealBasis.parse(P.ring, 'x^2, y^2')
        u = P.ring.parse('x*y')
        check = verify_bounds(P, I, u, 2, BoundConstants(1, 1))
        self.assertTrue(all(entry.lhs == 0 for entry in check.entries))
        with self.assertRaises(DomainError):
            check_socle_pair(P, I, P.ring.parse('x'))

    def test_node_at_five(self):
        P = LocalRingPresentation.from_text(make_ring(5, 'x, y'), 'x*y', name='node')
        I = IdealBasis.parse(P.ring, 'x + y')
        check = verify_bounds(P, I, P.ring.parse('x'), 3, BoundConstants(2, 8))
        self.assertEqual(len(check.entries), 6)
        self.assertEqual(check.violations, [])

    def test_cusp(self):
        P = example('cusp')
        I = IdealBasis.parse(P.ring, 'x')
        u = P.ring.parse('y')
        check = verify_bounds(P, I, u, 3, BoundConstants(2, 9, conditional=False))
        self.assertEqual([(v.e, v.e_prime) for v in check.entries][-1], (3, 3))
        self.assertEqual(check.violations, [])
        self.assertTrue(check.passed)


class FilteredBoundTests(unittest.TestCase):
    def setUp(self):
        ring = make_ring(3, 'x, y')
        self.P = LocalRingPresentation.from_text(ring, 'x^2*y^2', name='double_node')
        self.N = IdealBasis.parse(ring, 'x*y')
        self.I = IdealBasis.parse(ring, 'x + y')
        self.u = ring.parse('x^3')

    def test_nilpotency(self):
        self.assertEqual(nilpotency_exponent(self.P, self.N), 1)
        self.assertEqual(filtration_length(self.P, self.N), 2)

    def test_not_nilpotent(self):
        with self.assertRaises(DomainError):
            filtration_length(self.P, IdealBasis.parse(self.P.ring, 'x'))

    def test_filtered_bound(self):
        constants = BoundConstants(2, 8, e0=1, b=2)
        self.assertTrue(constants.filtered)
        entry = verify_filtered_bound(self.P, self.N, self.I, self.u, 2, constants)
        self.assertEqual(entry.rhs, Fraction(3 * 4 * 2 * 8, 9))
        self.assertTrue(entry.passed)
        with self.assertRaises(DomainError):
            verify_filtered_bound(self.P, self.N, self.I, self.u, 0, constants)
        with self.assertRaises(DomainError):
            verify_filtered_bound(self.P, self.N, self.I, self.u, 1, constants)


class HypersurfaceTests(unittest.TestCase):
    def test_cusp(self):
        ring = make_ring(5, 'x, y')
        check = hypersurface_bound(ring, ring.parse('y^2 - x^3'), 2, 1)
        self.assertEqual(check.colength, 10)
        self.assertEqual(check.bound, 10)
        self.assertTrue(check.passed)

    def test_order_too_large(self):
        ring = make_ring(5, 'x, y')
        with self.assertRaises(DomainError):
            hypersurface_bound(ring, ring.parse('y^2 - x^3'), 1, 1)

    def test_monomial_family_is_tight(self):
        ring = make_ring(5, 'x, y')
        for n in (1, 2, 3, 4):
            for e in (1, 2):
                check = hypersurface_bound(ring, ring.gen(0) ** n, n, e)
                self.assertEqual(check.colength, n * check.q)
                self.assertEqual(check.colength, check.bound)

    def test_random_hypersurfaces(self):
        rng = np.random.default_rng(7)
        for trial in range(25):
            p = int(rng.choice([2, 3, 5]))
            ring = make_ring(p, 'x, y' if trial % 2 else 'x, y, z')
            F = random_polynomial(ring, rng)
            while F.is_zero():
                F = random_polynomial(ring, rng)
            n = F.order_at_origin()
            check = hypersurface_bound(ring, F, n, 1)
            self.assertTrue(check.passed, str(F))


class BasicLengthsTests(unittest.TestCase):
    def test_random_instances(self):
        rng = np.random.default_rng(1)
        P = example('plane')
        for _ in range(3):
            I, u = random_socle_instance(P.ring, rng, max_exponent=3)
            lhs, rhs = basic_lengths_check(P, I, u, 3)
            self.assertEqual(lhs, rhs)

    def test_node(self):
        P = example('node')
        I = IdealBasis.parse(P.ring, 'x + y')
        self.assertEqual(basic_lengths_check(P, I, P.ring.parse('x'), 3), (1, 1))

    def test_many_random_instances(self):
        rng = np.random.default_rng(2)
        P = example('plane')
        for _ in range(50):
            I, u = random_socle_instance(P.ring, rng, max_exponent=3)
            for q in (3, 9):
                lhs, rhs = basic_lengths_check(P, I, u, q)
                self.assertEqual(lhs, rhs, (str(I), str(u), q))


if __name__ == '__main__':
    unittest.main()
