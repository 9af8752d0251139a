import unittest
from fractions import Fraction

from frobenius_lab.dict_diff import dict_diff


class DictDiffTests(unittest.TestCase):
    def test_equal(self):
        self.assertEqual(dict_diff({'a': 1}, {'a': 1}), {})

    def test_changed_and_unique_keys(self):
        diff = dict_diff({'a': 1, 'b': 2}, {'a': 3, 'c': 4})
        self.assertEqual(diff, {'a': [1, 3], 'b': [2, '-'], 'c': ['-', 4]})

    def test_nested(self):
        old = {'results': {'lambda': Fraction(5, 3), 'd': 1}, 'job': 'x'}
        new = {'results': {'lambda': Fraction(17, 9), 'd': 1}, 'job': 'x'}
        self.assertEqual(
            dict_diff(old, new), {'results/lambda': [Fraction(5, 3), Fraction(17, 9)]}
        )


if __name__ == '__main__':
    unittest.main()
