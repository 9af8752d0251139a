import unittest

from frobenius_lab.exceptions import ParseError
from frobenius_lab.jobs import (
    JobSpec,
    build_curve,
    build_presentation,
    build_subvarieties,
    format_job,
    parse_job,
)

NODE_HK = """\
# the node in characteristic 3
command = hk
p = 3; vars = x, y; ideal = x*y
emax = 3
"""

NODE_SURFACE_SCAN = """\
command = scan
name = node_surface
p = 3
vars = x, y, z
ideal = x*y
points = 0,0,0 | 0,0,1
subvariety = x, y
witnesses = 0,0,1 : z | 0,0,2 : z
"""


class ParseJobTests(unittest.TestCase):
    def test_hk(self):
        job = parse_job(NODE_HK)
        self.assertEqual(
            job,
            JobSpec(command='hk', p=3, variables=('x', 'y'), ideal=('x*y',), e_max=3),
        )

    def test_round_trip(self):
        for text in (NODE_HK, NODE_SURFACE_SCAN):
            job = parse_job(text)
            self.assertEqual(parse_job(format_job(job)), job)

    def test_format(self):
        self.assertEqual(
            format_job(parse_job(NODE_HK)),
            'command = hk\np = 3\nvars = x, y\nideal = x*y\nemax = 3\n',
        )

    def test_curves(self):
        job = parse_job('command = tame\np = 5\nbranch = 1 @ 1\nbranch = 1 @ 1\n')
        self.assertEqual(job.branches, (((1,), 1), ((1,), 1)))
        curve = build_curve(job)
        self.assertEqual(curve.invariants.Delta, 8)
        job = parse_job('command = tame; p = 5; branch = 2,3')
        self.assertEqual(job.branches, (((2, 3), 0),))
        self.assertIn('branch = 2,3\n', format_job(job))

    def test_subvarieties(self):
        job = parse_job(NODE_SURFACE_SCAN)
        self.assertEqual(job.points, ((0, 0, 0), (0, 0, 1)))
        self.assertEqual(
            job.subvarieties,
            ((('x', 'y'), (((0, 0, 1), ('z',)), ((0, 0, 2), ('z',)))),),
        )
        (axis,) = build_subvarieties(job)
        self.assertEqual(axis.label(), 'x, y')
        self.assertEqual(axis.witnesses[1].point, (0, 0, 2))

    def test_pairs(self):
        job = parse_job('command = scan; pairs = 1,0 | 2,0')
        self.assertEqual(job.pairs, ((1, 0), (2, 0)))

    def test_overrides(self):
        job = parse_job(NODE_HK).with_overrides(e_max=5, precision=None)
        self.assertEqual(job.e_max, 5)
        self.assertIsNone(job.precision)

    def test_build_presentation(self):
        P = build_presentation(parse_job(NODE_HK + 'point = 0,4\n'))
        self.assertEqual(P.point, (0, 1))
        self.assertEqual(str(P.ideal), '(x*y)')


class ParseErrorTests(unittest.TestCase):
    def assertParseError(self, text, position):
        with self.assertRaises(ParseError) as cm:
            parse_job(text)
        self.assertEqual(cm.exception.position, position)

    def test_positions(self):
        self.assertParseError('command = hk\nfoo = 1', 13)
        self.assertParseError('command = hk; p = x', 18)
        self.assertParseError('command = hk\ncommand = fsig', 13)
        self.assertParseError('command = frob', 10)
        self.assertParseError('command hk', 0)
        self.assertParseError('p = 3', 5)

    def test_expression_positions(self):
        self.assertParseError('command = hk; p = 3; vars = x, y; ideal = x*y + $', 48)
        self.assertParseError('command = hk\np = 3\nvars = x, y\nideal = x*y, w', 44)

    def test_duplicate_variables(self):
        self.assertParseError('command = hk; p = 3; vars = x, x; ideal = x', 28)
        with self.assertRaises(ParseError) as cm:
            parse_job('command = hk\nvars = x, y, x')
        self.assertIn("'x'", str(cm.exception))

    def test_structure(self):
        with self.assertRaises(ParseError):
            parse_job('command = scan\nwitnesses = 0,0 : x')
        with self.assertRaises(ParseError):
            parse_job('command = scan\npairs = 1,2,3')
        with self.assertRaises(ParseError):
            parse_job('command = hk\nvars = x, 2y')

    def test_missing_keys(self):
        with self.assertRaises(ParseError) as cm:
            build_presentation(parse_job('command = hk\np = 3\nvars = x'))
        self.assertIn('ideal', str(cm.exception))


if __name__ == '__main__':
    unittest.main()
