import unittest
from fractions import Fraction

from frobenius_lab.exceptions import DomainError
from frobenius_lab.ideals import IdealBasis
from frobenius_lab.local_ring import rational_points
from frobenius_lab.spec_scan import (
    GenericValue,
    ScanReport,
    SpecializationPair,
    Subvariety,
    Witness,
    automatic_pairs,
    generic_value,
    scan_points,
    semicontinuity_verdict,
)
from frobenius_lab.testing_utils import example


class GenericValueTests(unittest.TestCase):
    def setUp(self):
        self.P = example('node_surface')
        self.axis = IdealBasis.parse(self.P.ring, 'x, y')

    def test_node_surface(self):
        for point in ((0, 0, 1), (0, 0, 2)):
            g = generic_value(self.P, self.axis, Witness(point, ('z',)), 1, name='axis')
            self.assertEqual(g.value, Fraction(5, 3))
            self.assertEqual((g.colength, g.height, g.h), (15, 1, 1))
            self.assertEqual(g.to_dict()['lambda'], Fraction(5, 3))

    def test_second_frobenius_power(self):
        g = generic_value(self.P, self.axis, Witness((0, 0, 1), ('z',)), 2)
        self.assertEqual(g.value, Fraction(17, 9))

    def test_witness_off_the_subvariety(self):
        with self.assertRaises(DomainError):
            generic_value(self.P, self.axis, Witness((1, 0, 0), ('z',)), 1)

    def test_wrong_number_of_parameters(self):
        with self.assertRaises(DomainError):
            generic_value(self.P, self.axis, Witness((0, 0, 1)), 1)

    def test_parameters_not_regular(self):
        with self.assertRaises(DomainError):
            generic_value(self.P, self.axis, Witness((0, 0, 1), ('x',)), 1)


class ScanTests(unittest.TestCase):
    def test_cusp(self):
        P = example('cusp')
        points = rational_points(P.ideal)
        self.assertEqual(points, [(0, 0), (1, 1), (1, 4), (4, 2), (4, 3)])
        report = scan_points(P, points, 1)
        origin = report.points[0]
        self.assertFalse(origin.smooth)
        self.assertEqual(origin.lambdas[0].value, 2)
        self.assertEqual(origin.splittings[0].value, 0)
        for record in report.points[1:]:
            self.assertTrue(record.smooth)
            self.assertEqual(record.lambdas[0].value, 1)
            self.assertEqual(record.splittings[0].value, 1)
        self.assertEqual([(pair.special, pair.generic) for pair in report.pairs], [(0, 1), (0, 2), (0, 3), (0, 4)])
        verdict = report.verdict
        self.assertTrue(verdict.upper_semicontinuous_lambda)
        self.assertTrue(verdict.lower_semicontinuous_s)
        self.assertEqual(verdict.violations, [])

    def test_declared_pairs_can_fail(self):
        P = example('cusp')
        report = scan_points(P, [(0, 0), (1, 1)], 1, pairs=[(1, 0)])
        verdict = report.verdict
        self.assertFalse(verdict.upper_semicontinuous_lambda)
        self.assertFalse(verdict.lower_semicontinuous_s)
        self.assertEqual([v['invariant'] for v in verdict.violations], ['lambda', 's'])

    def test_unknown_pair_index(self):
        with self.assertRaises(DomainError):
            scan_points(example('cusp'), [(0, 0)], 1, pairs=[(0, 3)])

    def test_point_off_the_variety(self):
        with self.assertRaises(DomainError):
            scan_points(example('cusp'), [(1, 2)], 1)

    def test_e_max(self):
        with self.assertRaises(DomainError):
            scan_points(example('cusp'), [(0, 0)], 0)

    def test_csv_rows(self):
        report = scan_points(example('cusp'), [(0, 0), (1, 1)], 1)
        rows = report.csv_rows()
        self.assertEqual(rows[0], ('point', 'e', 'q', 'lambda', 's'))
        self.assertEqual(rows[1], ('0 0', 1, 5, '2', '0'))
        self.assertEqual(rows[2], ('1 1', 1, 5, '1', '1'))

    def test_node_surface_with_witnesses(self):
        P = example('node_surface')
        axis = Subvariety(
            IdealBasis.parse(P.ring, 'x, y'),
            [Witness((0, 0, 1), ('z',)), Witness((0, 0, 2), ('z',))],
            'axis',
        )
        report = scan_points(P, [(0, 0, 0)], 1, subvarieties=[axis], with_splitting=False)
        self.assertEqual([r.point for r in report.points], [(0, 0, 0), (0, 0, 1), (0, 0, 2)])
        self.assertEqual([g.value for g in report.generic_values], [Fraction(5, 3)] * 2)
        self.assertEqual([r.lambdas[0].value for r in report.points], [Fraction(5, 3)] * 3)
        pairs = [(pair.special, pair.generic) for pair in report.pairs]
        self.assertEqual(pairs, [(1, (0, 0)), (2, (0, 1))])
        self.assertTrue(report.verdict.generic_constancy)
        self.assertTrue(report.verdict.upper_semicontinuous_lambda)
        self.assertEqual(report.to_dict()['subvarieties'], ['axis'])


class VerdictTests(unittest.TestCase):
    def test_no_pairs_is_vacuous(self):
        report = ScanReport('empty', 3, [1], [])
        with self.assertLogs('frobenius_lab.spec_scan', level='WARNING'):
            verdict = semicontinuity_verdict(report)
        self.assertTrue(verdict.upper_semicontinuous_lambda)
        self.assertTrue(verdict.generic_constancy)

    def test_witness_disagreement(self):
        P = example('node_surface')
        axis = Subvariety(
            IdealBasis.parse(P.ring, 'x, y'),
            [Witness((0, 0, 1), ('z',)), Witness((0, 0, 2), ('z',))],
            'axis',
        )
        values = [
            GenericValue('axis', (0, 0, 1), 1, 3, 15, 1, 1, Fraction(5, 3)),
            GenericValue('axis', (0, 0, 2), 1, 3, 9, 1, 1, Fraction(1)),
        ]
        report = ScanReport('node_surface', 3, [1], [], [axis], values)
        with self.assertLogs('frobenius_lab.spec_scan', level='WARNING'):
            verdict = semicontinuity_verdict(report)
        self.assertFalse(verdict.generic_constancy)
        (entry,) = verdict.outside_constructible_neighbourhood
        self.assertEqual(entry['subvariety'], 'axis')
        self.assertEqual([v['lambda'] for v in entry['values']], [Fraction(5, 3), 1])

    def test_automatic_pairs_skip_smooth_points(self):
        report = scan_points(example('line'), [(0, 0), (1, 1)], 1)
        self.assertEqual(automatic_pairs(report), [])
        pair = SpecializationPair(0, (1, 2))
        self.assertTrue(pair.to_subvariety)
        self.assertEqual(pair.to_dict(), {'special': 0, 'generic': [1, 2]})


if __name__ == '__main__':
    unittest.main()
