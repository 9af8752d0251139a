import math
import unittest

import numpy as np

from frobenius_lab.exceptions import DomainError, PrecisionError, ValidationError
from frobenius_lab.tame_curves import (
    Branch,
    BranchCurve,
    NumericalSemigroup,
    algebra_generator_count,
    construct_parameter,
    disc_kills_cokernel,
    discriminant_valuation,
    generator_bound_check,
    module_generators,
    realized_degree,
    split_etale_check,
    tame_disc_valuation,
    tame_gamma,
    truncated_quotient_dimension,
)


def cusp(p=5):
    return BranchCurve(p, [Branch(NumericalSemigroup([2, 3]))], 'cusp')


def node(p=5):
    line = NumericalSemigroup([1])
    return BranchCurve(p, [Branch(line, 1), Branch(line, 1)], 'node')


def smooth(p=5):
    return BranchCurve(p, [Branch(NumericalSemigroup([1]))], 'smooth')


class NumericalSemigroupTests(unittest.TestCase):
    def test_cusp_semigroup(self):
        S = NumericalSemigroup([3, 2])
        self.assertEqual(S.conductor, 2)
        self.assertEqual(S.frobenius_number, 1)
        self.assertEqual(S.gaps, [1])
        self.assertEqual(S.genus, 1)
        self.assertEqual(S.multiplicity, 2)
        self.assertEqual(str(S), '<2, 3>')
        self.assertNotIn(1, S)
        self.assertIn(7, S)
        self.assertNotIn(-2, S)

    def test_three_five(self):
        S = NumericalSemigroup([3, 5])
        self.assertEqual(S.gaps, [1, 2, 4, 7])
        self.assertEqual(S.conductor, 8)
        self.assertEqual(S.apery_set(), [0, 10, 5])
        self.assertEqual(S.elements_up_to(6), [0, 3, 5, 6])

    def test_minimal_generators(self):
        S = NumericalSemigroup([3, 4, 6])
        self.assertEqual(S.minimal_generators, [3, 4])
        self.assertEqual(S, NumericalSemigroup([4, 3]))
        self.assertEqual(hash(S), hash(NumericalSemigroup([3, 4])))

    def test_natural_numbers(self):
        S = NumericalSemigroup([1])
        self.assertEqual(S.conductor, 0)
        self.assertEqual(S.gaps, [])

    def test_invalid(self):
        with self.assertRaises(ValidationError):
            NumericalSemigroup([2, 4])
        with self.assertRaises(ValidationError):
            NumericalSemigroup([])
        with self.assertRaises(ValidationError):
            NumericalSemigroup([0, 1])


class BranchCurveTests(unittest.TestCase):
    def test_validation(self):
        S = NumericalSemigroup([2, 3])
        with self.assertRaises(ValidationError):
            BranchCurve(5, [])
        with self.assertRaises(ValidationError):
            BranchCurve(5, [Branch(S, 2)])
        with self.assertRaises(ValidationError):
            BranchCurve(5, [Branch(S), Branch(S)])
        with self.assertRaises(ValidationError):
            BranchCurve(5, [Branch(S, 1), Branch(S, 2)])
        with self.assertRaises(ValidationError):
            BranchCurve(5, [Branch(S, 2)] * 5)

    def test_str(self):
        self.assertEqual(str(cusp()), 'cusp over F_5: <2, 3>')
        self.assertEqual(str(node()), 'node over F_5: <1> @ 1, <1> @ 1')

    def test_ring_membership(self):
        branch = Branch(NumericalSemigroup([2, 3]), 3)
        self.assertEqual(branch.positive_elements_up_to(6), [3, 4, 5, 6])
        self.assertFalse(branch.in_ring(2))
        self.assertFalse(branch.in_ring(0))


class TameInvariantTests(unittest.TestCase):
    def test_gamma(self):
        self.assertEqual(tame_gamma(5, 2, 0), 2)
        self.assertEqual(tame_gamma(2, 2, 0), 3)
        self.assertEqual(tame_gamma(3, 0, 0), 1)
        self.assertEqual(tame_gamma(3, 4, 2), 7)

    def test_cusp(self):
        inv = cusp().invariants
        self.assertEqual(inv.branches[0].gamma0, 2)
        self.assertEqual(inv.branches[0].gamma, 2)
        self.assertEqual((inv.delta, inv.Delta), (2, 9))

    def test_cusp_in_characteristic_two(self):
        inv = cusp(2).invariants
        self.assertEqual(inv.branches[0].gamma, 3)
        self.assertEqual((inv.delta, inv.Delta), (3, 16))

    def test_node_and_smooth(self):
        self.assertEqual((node().invariants.delta, node().invariants.Delta), (2, 8))
        self.assertEqual((smooth().invariants.delta, smooth().invariants.Delta), (1, 4))

    def test_to_dict(self):
        self.assertEqual(
            cusp().invariants.to_dict(),
            {'branches': [{'beta': 0, 'gamma0': 2, 'gamma': 2}], 'delta': 2, 'Delta': 9},
        )


class ParameterTests(unittest.TestCase):
    def test_parameter(self):
        self.assertEqual(construct_parameter(cusp()).to_dict(), {'t': 't^2', 'valuations': [2]})
        self.assertEqual(construct_parameter(node()).description, 't1 + t2')
        self.assertEqual(construct_parameter(node()).valuations, (1, 1))

    def test_precision_too_low(self):
        with self.assertRaises(PrecisionError) as cm:
            construct_parameter(cusp(), precision=2)
        self.assertEqual(cm.exception.required_precision, 3)


class DiscriminantTests(unittest.TestCase):
    def test_matches_Delta(self):
        for curve, Delta in ((cusp(), 9), (node(), 8), (smooth(), 4), (cusp(2), 16)):
            result = discriminant_valuation(curve)
            self.assertEqual(result.valuation, Delta, str(curve))
            self.assertTrue(result.matches)

    def test_independent_of_units(self):
        for seed in (1, 2):
            result = discriminant_valuation(cusp(7), rng=np.random.default_rng(seed))
            self.assertEqual(result.valuation, 9)

    def test_precision_cap(self):
        with self.assertRaises(PrecisionError) as cm:
            discriminant_valuation(cusp(), precision=4, precision_cap=4)
        self.assertEqual(cm.exception.required_precision, 8)

    def test_tame_extension(self):
        rng = np.random.default_rng(0)
        for p, s, b in ((5, 2, 1), (5, 3, 2), (7, 2, 3)):
            check = tame_disc_valuation(p, s, b, rng)
            self.assertEqual(check.valuation, (s + 1) * b)
            self.assertTrue(check.passed)

    def test_random_tame_extensions(self):
        rng = np.random.default_rng(2026)
        trials = 0
        while trials < 100:
            p = int(rng.choice([2, 3, 5, 7]))
            s = int(rng.integers(1, 6))
            b = int(rng.integers(1, 5))
            if s % p == 0 or math.gcd(b, s) != 1:
                continue
            check = tame_disc_valuation(p, s, b, rng)
            self.assertEqual(check.valuation, (s + 1) * b, (p, s, b))
            trials += 1

    def test_tame_extension_preconditions(self):
        rng = np.random.default_rng(0)
        with self.assertRaises(DomainError):
            tame_disc_valuation(3, 3, 1, rng)
        with self.assertRaises(DomainError):
            tame_disc_valuation(5, 2, 2, rng)

    def test_split_etale(self):
        rng = np.random.default_rng(0)
        for copies in (1, 2, 3):
            self.assertTrue(split_etale_check(5, rng, copies).passed)


class ModuleStructureTests(unittest.TestCase):
    def test_realized_degree(self):
        for curve in (cusp(), node(), smooth(), cusp(2)):
            self.assertEqual(realized_degree(curve), curve.invariants.delta)
        self.assertEqual(truncated_quotient_dimension(cusp(), 20), 40)

    def test_module_generators(self):
        self.assertEqual(module_generators(cusp()), ['1', 't^3'])
        self.assertEqual(module_generators(node()), ['1', 't2'])
        self.assertEqual(module_generators(smooth()), ['1'])
        self.assertEqual(len(module_generators(cusp(2))), 3)

    def test_algebra_generators(self):
        self.assertEqual(algebra_generator_count(cusp()), 1)
        self.assertEqual(algebra_generator_count(node()), 1)
        self.assertEqual(algebra_generator_count(smooth()), 0)

    def test_generator_bound(self):
        check = generator_bound_check(cusp())
        self.assertEqual(
            check.to_dict(),
            {'generators': 2, 'delta': 2, 'mu': 1, 'bound': 2, 'pass': True},
        )
        self.assertFalse(generator_bound_check(node(), mu=0).passed)


class CokernelTests(unittest.TestCase):
    def test_cusp(self):
        check = disc_kills_cokernel(cusp(), 1)
        self.assertTrue(check.passed)
        self.assertEqual(check.target_generators, (2, 15))
        self.assertEqual(check.D, 9)

    def test_single_branch_only(self):
        with self.assertRaises(DomainError):
            disc_kills_cokernel(node(), 1)


if __name__ == '__main__':
    unittest.main()
