#####################################################################
#                                                                   #
# local_ring.py                                                     #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
"""Local rings R = (S/I) at an F_p-rational point and the Hilbert-Kunz primitive
lambda_e(R) = l(R/m^[q]) / q^d."""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from frobenius_lab import dedent
from frobenius_lab.exceptions import DomainError
from frobenius_lab.ideals import (
    IdealBasis,
    colength,
    dimension,
    frobenius_maximal,
    ideal_sum,
)

logger = logging.getLogger(__name__)

# Brute force enumeration of F_p^n is only offered for small n.
MAX_ENUMERATION_VARIABLES = 4


class LocalRingPresentation(object):
    """The ring S/I localized at `point`, where S = F_p[x_1, ..., x_n]. `name` is an
    optional identifier carried into reports."""

    def __init__(self, ideal, point=None, name=None):
        self.ring = ideal.ring
        self.ideal = ideal
        if point is None:
            point = (0,) * self.ring.ngens
        point = tuple(int(a) % self.ring.p for a in point)
        if len(point) != self.ring.ngens:
            msg = 'point %s has %d coordinates, the ring has %d variables'
            raise DomainError(msg % (point, len(point), self.ring.ngens))
        self.point = point
        self.name = name

    @classmethod
    def from_text(cls, ring, generators, point=None, name=None):
        return cls(IdealBasis.parse(ring, generators), point, name)

    @property
    def p(self):
        return self.ring.p

    def at_origin(self):
        return not any(self.point)

    def check_point(self):
        for g in self.ideal.generators:
            if g.evaluate(self.point):
                msg = """point %s is not on V(I): the generator %s takes the value %s
                    there"""
                raise DomainError(dedent(msg) % (self.point, g, g.evaluate(self.point)))

    @cached_property
    def dimension(self):
        """Dimension of S/I, computed on the ideal translated to the origin"""
        return dimension(translate_to_origin(self).ideal)

    def __str__(self):
        label = self.name or 'R'
        return '%s = %s/%s at %s' % (label, self.ring, self.ideal, self.point)

    def __repr__(self):
        return 'LocalRingPresentation(%s)' % self


@dataclass(frozen=True)
class FrobeniusSample:
    """One term lambda_e = colength / q^d of the Hilbert-Kunz sequence"""

    e: int
    q: int
    colength: int
    value: Fraction

    def to_dict(self):
        return {'e': self.e, 'q': self.q, 'colength': self.colength, 'lambda': self.value}


def translate_to_origin(P):
    """Substitute x_i -> x_i + a_i so that the point of P becomes the origin"""
    P.check_point()
    if P.at_origin():
        return P
    gens = [g.translate(P.point) for g in P.ideal.generators]
    return LocalRingPresentation(IdealBasis(P.ring, gens), None, P.name)


def lambda_sample(P, e, budget=None, validate=False):
    """lambda_e of P: colength(I + m^[q]) / q^d. As V(m^[q]) is the origin, the global
    colength is the length of the local ring."""
    P = translate_to_origin(P)
    q = P.ring.field.frobenius_exponent(e)
    d = P.dimension
    count = colength(ideal_sum(P.ideal, frobenius_maximal(P.ring, q)), budget)
    sample = FrobeniusSample(e, q, count, Fraction(count, q**d))
    logger.info('lambda_%d(%s) = %s', e, P.name or P.ideal, sample.value)
    if validate:
        report = jacobian_report(P)
        if report['smooth'] != (sample.value == 1):
            msg = """Jacobian criterion (rank %d, n - d = %d) disagrees with
                lambda_%d = %s; the input may not be equidimensional at the point"""
            logger.warning(
                dedent(msg), report['rank'], report['n'] - report['d'], e, sample.value
            )
    return sample


def rank_mod_p(matrix, p):
    """Rank over F_p of an integer matrix by Gaussian elimination"""
    A = np.array(matrix, dtype=np.int64) % p
    if A.size == 0:
        return 0
    rows, cols = A.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nonzero = np.nonzero(A[rank:, col])[0]
        if nonzero.size == 0:
            continue
        pivot = rank + nonzero[0]
        if pivot != rank:
            A[[rank, pivot]] = A[[pivot, rank]]
        inv = pow(int(A[rank, col]), p - 2, p)
        A[rank] = A[rank] * inv % p
        factors = A[:, col].copy()
        factors[rank] = 0
        A = (A - np.outer(factors, A[rank])) % p
        rank += 1
    return rank


def jacobian_matrix(P):
    """Partial derivatives of the generators of I at the point of P"""
    ring = P.ring
    return [
        [int(g.derivative(i).evaluate(P.point)) for i in range(ring.ngens)]
        for g in P.ideal.generators
    ]


def jacobian_rank(P):
    return rank_mod_p(jacobian_matrix(P), P.p)


def jacobian_report(P):
    P = translate_to_origin(P)
    rank = jacobian_rank(P)
    n = P.ring.ngens
    d = P.dimension
    return {'rank': rank, 'n': n, 'd': d, 'smooth': rank == n - d}


def is_smooth_at_origin(P):
    """Jacobian criterion: rank of the Jacobian at the point equals n - d"""
    return jacobian_report(P)['smooth']


def rational_points(ideal):
    """All F_p-rational points of V(I), by brute force over F_p^n"""
    ring = ideal.ring
    if ring.ngens > MAX_ENUMERATION_VARIABLES:
        msg = """rational point enumeration supports at most %d variables, the ring
            has %d"""
        raise DomainError(dedent(msg) % (MAX_ENUMERATION_VARIABLES, ring.ngens))
    points = []
    for point in itertools.product(range(ring.p), repeat=ring.ngens):
        if all(not g.evaluate(point) for g in ideal.generators):
            points.append(point)
    return points
