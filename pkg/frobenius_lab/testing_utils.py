#####################################################################
#                                                                   #
# testing_utils.py                                                  #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
import itertools

import numpy as np

from frobenius_lab.ideals import IdealBasis
from frobenius_lab.local_ring import LocalRingPresentation, rank_mod_p
from frobenius_lab.polynomials import Polynomial, make_ring


class monkeypatch(object):
    """Context manager to temporarily monkeypatch an object attribute with
    some mocked attribute"""

    def __init__(self, obj, name, mocked_attr):
        self.obj = obj
        self.name = name
        self.real_attr = getattr(obj, name)
        self.mocked_attr = mocked_attr

    def __enter__(self):
        setattr(self.obj, self.name, self.mocked_attr)

    def __exit__(self, *args):
        setattr(self.obj, self.name, self.real_attr)


class Any(object):
    """A class whose instances equal any object of the given type or tuple of
    types. For use with mock.Mock.assert_called_with when you don't care what
    some of the arguments are"""

    def __init__(self, types=object):
        if isinstance(types, type):
            self.types = (types,)
        else:
            self.types = types

    def __eq__(self, other):
        return any(isinstance(other, type_) for type_ in self.types)


# Instance of Any() that does not specify type:
ANY = Any()


def random_polynomial(ring, rng, terms=3, max_exponent=3):
    """Sum of up to `terms` random monomials of `ring` with nonzero coefficients"""
    f = ring.zero()
    for _ in range(int(rng.integers(1, terms + 1))):
        exps = tuple(int(a) for a in rng.integers(0, max_exponent + 1, size=ring.ngens))
        f = f + int(rng.integers(1, ring.p)) * ring.monomial(exps)
    return f


# name: (p, variables, generators). Small rings exercised by several test modules.
EXAMPLE_SUITE = {
    'plane': (3, 'x, y', ''),
    'line': (5, 'x, y', 'y - x^2'),
    'node': (3, 'x, y', 'x*y'),
    'cusp': (5, 'x, y', 'y^2 - x^3'),
    'cone': (5, 'x, y, z', 'x*y - z^2'),
    'fermat_cubic_5': (5, 'x, y, z', 'x^3 + y^3 + z^3'),
    'fermat_cubic_7': (7, 'x, y, z', 'x^3 + y^3 + z^3'),
    'double_line': (3, 'x, y', 'x^2'),
    'node_surface': (3, 'x, y, z', 'x*y'),
}


def example(name, point=None):
    """The LocalRingPresentation of EXAMPLE_SUITE[name]"""
    p, variables, generators = EXAMPLE_SUITE[name]
    ring = make_ring(p, variables)
    return LocalRingPresentation(IdealBasis.parse(ring, generators), point, name)


def _box(n, bound):
    return itertools.product(range(bound), repeat=n)


def brute_force_colength(ideal, bound):
    """dim S/I by linear algebra on S/(x_1^bound, ..., x_n^bound), which must be a
    quotient of S/I (every x_i^bound in I). Independent of Groebner bases."""
    ring = ideal.ring
    n = ring.ngens
    monomials = list(_box(n, bound))
    index = {m: i for i, m in enumerate(monomials)}
    rows = []
    for g in ideal.generators:
        for m in monomials:
            row = np.zeros(len(monomials), dtype=np.int64)
            for mono, c in g.terms.items():
                product = tuple(a + b for a, b in zip(m, mono))
                if product in index:
                    row[index[product]] = (row[index[product]] + c) % ring.p
            if row.any():
                rows.append(row)
    if not rows:
        return len(monomials)
    return len(monomials) - rank_mod_p(np.array(rows), ring.p)


def standard_monomials(leading_monomials, bound):
    """Monomials in the box [0, bound)^n divisible by no leading monomial"""
    n = len(leading_monomials[0]) if leading_monomials else 0
    return [
        m
        for m in _box(n, bound)
        if not any(all(a >= b for a, b in zip(m, lead)) for lead in leading_monomials)
    ]


def brute_force_contains(ideal, f, degree):
    """Whether f is an F_p-combination of m * g with g a generator and deg(m g) <=
    `degree`. A True answer proves membership; False only rules out certificates of
    that degree."""
    ring = ideal.ring
    n = ring.ngens
    columns = {}
    vectors = []
    for g in ideal.generators:
        for m in itertools.product(range(degree + 1), repeat=n):
            if sum(m) + g.total_degree() > degree:
                continue
            vectors.append({tuple(a + b for a, b in zip(m, mono)): c for mono, c in g.terms.items()})
    target = dict(f.terms)
    for vector in vectors + [target]:
        for mono in vector:
            columns.setdefault(mono, len(columns))
    if not target:
        return True

    def dense(vector):
        row = np.zeros(len(columns), dtype=np.int64)
        for mono, c in vector.items():
            row[columns[mono]] = c % ring.p
        return row

    if not vectors:
        return False
    span = np.array([dense(v) for v in vectors])
    rank = rank_mod_p(span, ring.p)
    return rank == rank_mod_p(np.vstack([span, dense(target)]), ring.p)


def to_sympy(polys, ring):
    """sympy expressions of `polys` and the sympy symbols of `ring`"""
    import sympy

    symbols = sympy.symbols(ring.names)
    if not isinstance(symbols, tuple):
        symbols = (symbols,)
    expressions = []
    for f in polys:
        expr = sympy.Integer(0)
        for mono, c in f.terms.items():
            term = sympy.Integer(c)
            for s, a in zip(symbols, mono):
                term *= s**a
            expr += term
        expressions.append(expr)
    return expressions, symbols


def sympy_groebner(ideal):
    """Reduced grevlex Groebner basis of `ideal` computed by sympy, converted back to
    monic polynomials of ideal.ring"""
    import sympy

    ring = ideal.ring
    expressions, symbols = to_sympy(ideal.generators, ring)
    basis = sympy.groebner(expressions, *symbols, modulus=ring.p, order='grevlex')
    result = []
    for poly in basis.polys:
        terms = {mono: int(c) for mono, c in poly.terms()}
        result.append(Polynomial(ring, terms).monic())
    return result
