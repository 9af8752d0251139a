#####################################################################
#                                                                   #
# fsplit_lab.py                                                     #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
"""F-splitting ideals and numbers through Fedder's criterion.

For R = S/I with S = F_p[x_1, ..., x_n] localized at the origin and q = p^e, let
J_e = (I^[q] : I). An element c of S splits at level e exactly when c J_e is not
contained in m^[q], so the preimage in S of the splitting ideal I_e(R) is
(m^[q] : J_e), and s_e(R) = l(S/((m^[q] : J_e) + I)) / q^d."""

import logging
import threading
from dataclasses import dataclass
from fractions import Fraction

from frobenius_lab.exceptions import BudgetError, CapacityError, DomainError
from frobenius_lab.ideals import (
    bracket_power,
    colength,
    colon,
    contains,
    frobenius_maximal,
    groebner,
    ideal_sum,
)
from frobenius_lab.hk_lab import sequence_bounds
from frobenius_lab.local_ring import translate_to_origin
from frobenius_lab.pool import ordered_map

logger = logging.getLogger(__name__)

DEFAULT_E_CAP = 4

_cache_lock = threading.Lock()
_colon_cache = {}


def frobenius_colon(P, e, budget=None):
    """J_e = (I^[q] :_S I), cached per e on the ideal translated to the origin"""
    P = translate_to_origin(P)
    key = (P.ring, tuple(str(g) for g in P.ideal.generators), e)
    with _cache_lock:
        if key in _colon_cache:
            return _colon_cache[key]
    q = P.ring.field.frobenius_exponent(e)
    J = colon(bracket_power(P.ideal, q), P.ideal, budget)
    logger.debug('J_%d has %d generators', e, len(J))
    with _cache_lock:
        return _colon_cache.setdefault(key, J)


def splitting_ideal(P, e, budget=None):
    """Preimage in S of the F-splitting ideal I_e(R): (m^[q] :_S J_e)"""
    P = translate_to_origin(P)
    q = P.ring.field.frobenius_exponent(e)
    return colon(frobenius_maximal(P.ring, q), frobenius_colon(P, e, budget), budget)


@dataclass(frozen=True)
class SplittingSample:
    e: int
    q: int
    splitting_ideal: object
    colength: int
    value: Fraction

    def to_dict(self):
        return {
            'e': self.e,
            'q': self.q,
            'splitting_ideal': [str(g) for g in self.splitting_ideal.generators],
            'colength': self.colength,
            's': self.value,
        }


def splitting_number(P, e, budget=None):
    """s_e(R) = l(R/I_e(R)) / q^d"""
    P = translate_to_origin(P)
    q = P.ring.field.frobenius_exponent(e)
    ideal = splitting_ideal(P, e, budget)
    count = colength(ideal_sum(ideal, P.ideal), budget)
    sample = SplittingSample(e, q, ideal, count, Fraction(count, q**P.dimension))
    logger.info('s_%d(%s) = %s', e, P.name or P.ideal, sample.value)
    return sample


@dataclass
class SplittingReport:
    name: str
    p: int
    d: int
    samples: list
    empirical_C: Fraction = Fraction(0)
    interval: tuple = None
    stabilization_index: int = None
    truncated: bool = False
    error: str = None

    def to_dict(self):
        return {
            'presentation': self.name,
            'p': self.p,
            'd': self.d,
            'samples': [s.to_dict() for s in self.samples],
            'empirical_C': self.empirical_C,
            'signature_interval': list(self.interval) if self.interval else None,
            'stabilization_index': self.stabilization_index,
            'truncated': self.truncated,
            'error': self.error,
        }


def splitting_sequence(P, e_max, budget=None, threads=1):
    """s_1, ..., s_{e_max} with the same convergence evidence as hk_sequence"""
    if e_max < 1:
        raise DomainError('e_max must be at least 1, got %d' % e_max)
    P = translate_to_origin(P)
    samples, error = ordered_map(
        lambda e: splitting_number(P, e, budget),
        range(1, e_max + 1),
        threads,
        stop_on=(BudgetError, CapacityError),
    )
    report = SplittingReport(P.name or str(P.ideal), P.p, P.dimension, samples)
    if error is not None:
        report.truncated = True
        report.error = str(error)
        logger.warning('splitting sequence truncated after e=%d: %s', len(samples), error)
    bounds = sequence_bounds([(s.e, s.value) for s in samples], P.p)
    if bounds is not None:
        report.empirical_C = bounds.constant
        report.interval = bounds.interval
        report.stabilization_index = bounds.stabilization_index
    return report


@dataclass(frozen=True)
class PurityVerdict:
    is_F_pure: bool
    witness: str

    def to_dict(self):
        return {'is_F_pure': self.is_F_pure, 'witness': self.witness}


def fedder_test(P, budget=None):
    """R is F-pure iff J_1 is not contained in m^[p]"""
    P = translate_to_origin(P)
    p = P.p
    target = frobenius_maximal(P.ring, p)
    J = frobenius_colon(P, 1, budget)
    for g in groebner(J, budget=budget).elements:
        if not contains(target, g, budget):
            return PurityVerdict(True, '%s lies in (I^[p] : I) but not in m^[p]' % g)
    return PurityVerdict(False, 'every Groebner basis element of (I^[p] : I) lies in m^[p]')


@dataclass(frozen=True)
class PurityExponent:
    """Least e <= e_cap at which c splits, or None when the cap was reached"""

    c: str
    value: int
    e_cap: int

    @property
    def exceeds_cap(self):
        return self.value is None

    def to_dict(self):
        return {
            'c': self.c,
            'e': self.value if self.value is not None else 'exceeds cap',
            'e_cap': self.e_cap,
        }


def fpurity_exponent(P, c, e_cap=DEFAULT_E_CAP, budget=None):
    """Smallest e <= e_cap with c J_e not contained in m^[q]

    c is given in the coordinates of P and is moved to the origin with it."""
    if c.ring != P.ring:
        raise DomainError('%s is not an element of %s' % (c, P.ring))
    label = str(c)
    moved = translate_to_origin(P)
    if moved is not P:
        c = c.translate(P.point)
    P = moved
    for e in range(1, e_cap + 1):
        q = P.ring.field.frobenius_exponent(e)
        target = frobenius_maximal(P.ring, q)
        for g in frobenius_colon(P, e, budget).generators:
            if not contains(target, c * g, budget):
                logger.info('%s splits at e=%d', label, e)
                return PurityExponent(label, e, e_cap)
    logger.warning('%s does not split for any e <= %d', label, e_cap)
    return PurityExponent(label, None, e_cap)
