import unittest

from frobenius_lab.versions import (
    SCHEMA_VERSION,
    VersionException,
    check_schema_version,
    check_version,
)


class VersionTests(unittest.TestCase):
    def test_in_range(self):
        check_version('sympy', '1.12', '1.9', '2.0')

    def test_out_of_range(self):
        with self.assertRaises(VersionException):
            check_version('sympy', '2.1', '1.9', '2.0')
        with self.assertRaises(VersionException):
            check_version('sympy', '1.8', '1.9', '2.0')

    def test_missing_or_invalid(self):
        with self.assertRaises(VersionException):
            check_version('sympy', None, '1.9', '2.0')
        with self.assertRaises(VersionException):
            check_version('sympy', 'not a version', '1.9', '2.0')

    def test_schema(self):
        check_schema_version({'schema_version': SCHEMA_VERSION})
        check_schema_version({'schema_version': '1.3'})
        with self.assertRaises(VersionException):
            check_schema_version({'schema_version': '2.0'})
        with self.assertRaises(VersionException):
            check_schema_version({})


if __name__ == '__main__':
    unittest.main()
