import unittest
from fractions import Fraction

from frobenius_lab.exceptions import DomainError
from frobenius_lab.fsplit_lab import (
    fedder_test,
    fpurity_exponent,
    frobenius_colon,
    splitting_ideal,
    splitting_number,
    splitting_sequence,
)
from frobenius_lab.ideals import IdealBasis, ideals_equal
from frobenius_lab.local_ring import LocalRingPresentation
from frobenius_lab.polynomials import make_ring
from frobenius_lab.testing_utils import EXAMPLE_SUITE, example

REGULAR_RINGS = (('x', ''), ('x, y', ''), ('x, y, z', ''), ('x, y', 'y - x^2'))


class FrobeniusColonTests(unittest.TestCase):
    def test_hypersurface(self):
        P = example('node')
        J = frobenius_colon(P, 1)
        self.assertTrue(ideals_equal(J, IdealBasis.parse(P.ring, 'x^2*y^2')))

    def test_cached(self):
        P = example('node')
        self.assertIs(frobenius_colon(P, 1), frobenius_colon(P, 1))

    def test_cached_away_from_the_origin(self):
        ring = make_ring(3, 'x, y')
        moved = LocalRingPresentation.from_text(ring, '(x - 1)*y', point=(1, 0))
        J = frobenius_colon(moved, 1)
        self.assertIs(frobenius_colon(moved, 1), J)
        again = LocalRingPresentation.from_text(ring, '(x - 1)*y', point=(1, 0))
        self.assertIs(frobenius_colon(again, 1), J)
        self.assertTrue(ideals_equal(J, IdealBasis.parse(ring, 'x^2*y^2')))

    def test_splitting_ideal(self):
        P = example('node')
        I = splitting_ideal(P, 2)
        self.assertTrue(ideals_equal(I, IdealBasis.parse(P.ring, 'x, y')))


class SplittingNumberTests(unittest.TestCase):
    def test_node(self):
        P = example('node')
        self.assertEqual(splitting_number(P, 1).value, Fraction(1, 3))
        self.assertEqual(splitting_number(P, 2).value, Fraction(1, 9))

    def test_regular(self):
        self.assertEqual(splitting_number(example('plane'), 1).value, 1)
        self.assertEqual(splitting_number(example('line'), 1).value, 1)

    def test_not_f_pure(self):
        self.assertEqual(splitting_number(example('cusp'), 1).value, 0)

    def test_sequence(self):
        report = splitting_sequence(example('node'), 2)
        self.assertEqual([s.value for s in report.samples], [Fraction(1, 3), Fraction(1, 9)])
        self.assertEqual(report.empirical_C, Fraction(2, 3))
        record = report.to_dict()
        self.assertEqual(record['samples'][0]['s'], Fraction(1, 3))
        self.assertEqual(record['samples'][0]['splitting_ideal'], ['x', 'y'])
        with self.assertRaises(DomainError):
            splitting_sequence(example('node'), 0)

    def test_regular_rings_split_completely(self):
        for p in (2, 3, 5):
            for variables, generators in REGULAR_RINGS:
                ring = make_ring(p, variables)
                P = LocalRingPresentation.from_text(ring, generators)
                e_max = 2 if generators and p == 5 else 3
                for e in range(1, e_max + 1):
                    sample = splitting_number(P, e)
                    self.assertEqual(sample.value, 1, (p, variables, generators, e))

    def test_node_closed_form(self):
        for p in (2, 3, 5):
            P = LocalRingPresentation.from_text(make_ring(p, 'x, y'), 'x*y')
            for e in (1, 2, 3):
                self.assertEqual(splitting_number(P, e).value, Fraction(1, p**e), (p, e))

    def test_cone(self):
        report = splitting_sequence(example('cone'), 2)
        s_1, s_2 = [s.value for s in report.samples]
        self.assertGreater(s_1, 0)
        self.assertGreater(s_2, 0)
        self.assertLessEqual(abs(s_1 - s_2), report.empirical_C / 5)

    def test_intervals_are_nested(self):
        for name in ('plane', 'node', 'node_surface', 'double_line'):
            P = example(name)
            shorter = splitting_sequence(P, 2)
            longer = splitting_sequence(P, 3)
            for a, b in zip(longer.samples, longer.samples[1:]):
                self.assertLessEqual(P.p**a.e * abs(a.value - b.value), longer.empirical_C)
            self.assertLessEqual(shorter.interval[0], longer.interval[0], name)
            self.assertLessEqual(longer.interval[1], shorter.interval[1], name)


class FedderTests(unittest.TestCase):
    def test_fermat_cubic(self):
        self.assertTrue(fedder_test(example('fermat_cubic_7')).is_F_pure)
        self.assertFalse(fedder_test(example('fermat_cubic_5')).is_F_pure)

    def test_node_and_double_line(self):
        verdict = fedder_test(example('node'))
        self.assertTrue(verdict.is_F_pure)
        self.assertIn('x^2*y^2', verdict.witness)
        self.assertFalse(fedder_test(example('double_line')).is_F_pure)

    def test_cusp(self):
        self.assertFalse(fedder_test(example('cusp')).is_F_pure)

    def test_verdict_agrees_with_first_splitting_number(self):
        for name in EXAMPLE_SUITE:
            P = example(name)
            s_1 = splitting_number(P, 1).value
            self.assertEqual(fedder_test(P).is_F_pure, s_1 > 0, name)
        self.assertEqual(splitting_number(example('fermat_cubic_5'), 1).value, 0)


class PurityExponentTests(unittest.TestCase):
    def test_unit_splits_at_once(self):
        P = example('node')
        exponent = fpurity_exponent(P, P.ring.one(), 2)
        self.assertEqual(exponent.value, 1)
        self.assertFalse(exponent.exceeds_cap)

    def test_cap(self):
        P = example('node')
        exponent = fpurity_exponent(P, P.ring.parse('x'), 2)
        self.assertTrue(exponent.exceeds_cap)
        self.assertEqual(exponent.to_dict(), {'c': 'x', 'e': 'exceeds cap', 'e_cap': 2})

    def test_wrong_ring(self):
        with self.assertRaises(DomainError):
            fpurity_exponent(example('node'), make_ring(3, 'u, v').parse('u'), 1)

    def test_non_reduced_ring_never_splits(self):
        P = example('double_line')
        exponent = fpurity_exponent(P, P.ring.one(), 4)
        self.assertIsNone(exponent.value)
        self.assertEqual(exponent.to_dict()['e'], 'exceeds cap')

    def test_regular_ring_in_characteristic_two(self):
        ring = make_ring(2, 'x, y')
        P = LocalRingPresentation.from_text(ring, '')
        self.assertEqual(fpurity_exponent(P, ring.parse('x'), 4).value, 1)

    def test_moved_presentation(self):
        ring = make_ring(3, 'x, y')
        at_origin = LocalRingPresentation.from_text(ring, 'x*y')
        moved = LocalRingPresentation.from_text(ring, '(x - 1)*y', point=(1, 0))
        first = fpurity_exponent(at_origin, ring.parse('x'), 2)
        second = fpurity_exponent(moved, ring.parse('x - 1'), 2)
        self.assertIsNone(first.value)
        self.assertIsNone(second.value)
        self.assertEqual(second.c, 'x + 2')
        self.assertEqual(fpurity_exponent(moved, ring.parse('x + 1'), 2).value, 1)


if __name__ == '__main__':
    unittest.main()
