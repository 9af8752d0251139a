import os
import tempfile
import unittest
from fractions import Fraction

import h5py
import numpy as np

from frobenius_lab.properties import (
    JSON_IDENTIFIER,
    content_hash,
    decode_numbers,
    deserialise,
    encode_numbers,
    get_attribute,
    get_attributes,
    is_json,
    load_run_record_h5,
    save_run_record_h5,
    serialise,
    set_attributes,
)


class NumberEncodingTests(unittest.TestCase):
    def test_exact_numbers(self):
        self.assertEqual(encode_numbers(Fraction(5, 3)), {'num': '5', 'den': '3'})
        self.assertEqual(encode_numbers(np.int64(-7)), {'num': '-7', 'den': '1'})
        self.assertEqual(encode_numbers([True, None, 'x']), [True, None, 'x'])

    def test_big_integers_stay_exact(self):
        n = 3**100
        self.assertEqual(deserialise(serialise({'n': n})), {'n': n})

    def test_floats_are_refused(self):
        with self.assertRaises(TypeError):
            serialise({'value': 0.5})

    def test_non_string_keys(self):
        with self.assertRaises(TypeError):
            serialise({1: 'a'})

    def test_decode(self):
        self.assertEqual(decode_numbers({'num': '4', 'den': '2'}), 2)
        self.assertEqual(decode_numbers([{'num': '1', 'den': '2'}]), [Fraction(1, 2)])


class SerialiseTests(unittest.TestCase):
    def test_sorted_keys(self):
        self.assertEqual(serialise({'b': 1, 'a': 'x'}), '{"a":"x","b":{"den":"1","num":"1"}}')

    def test_content_hash(self):
        first = content_hash({'a': 1, 'b': [Fraction(1, 3)]})
        second = content_hash({'b': [Fraction(1, 3)], 'a': 1})
        self.assertEqual(first, second)
        self.assertNotEqual(first, content_hash({'a': 2, 'b': [Fraction(1, 3)]}))

    def test_is_json(self):
        self.assertTrue(is_json(JSON_IDENTIFIER + '{}'))
        self.assertTrue(is_json((JSON_IDENTIFIER + '[]').encode('utf8')))
        self.assertFalse(is_json('{}'))
        self.assertFalse(is_json(3))


class HDF5Tests(unittest.TestCase):
    def setUp(self):
        fd, self.filename = tempfile.mkstemp(suffix='.h5')
        os.close(fd)
        self.addCleanup(os.remove, self.filename)

    def test_attributes(self):
        attributes = {
            'name': 'node',
            'smooth': False,
            'lambda': Fraction(5, 3),
            'samples': [1, 2],
            'error': None,
        }
        with h5py.File(self.filename, 'w') as f:
            set_attributes(f, attributes)
        with h5py.File(self.filename, 'r') as f:
            self.assertEqual(get_attributes(f), attributes)
            self.assertEqual(get_attribute(f, 'lambda'), Fraction(5, 3))
            self.assertTrue(is_json(f.attrs['samples']))

    def test_run_record(self):
        record = {
            'schema_version': '1.0',
            'content_hash': 'abc',
            'results': {'delta': 2, 'generators': ['1', 't^3']},
        }
        save_run_record_h5(self.filename, record)
        self.assertEqual(load_run_record_h5(self.filename), record)


if __name__ == '__main__':
    unittest.main()
