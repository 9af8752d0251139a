#####################################################################
#                                                                   #
# spec_scan.py                                                      #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
"""Scans of lambda_e and s_e over F_p-rational points of Spec R, generic values along
subvarieties computed at witness points, and exact semi-continuity verdicts.

The generic value of lambda_e along a prime p of R is computed at a closed point Q of
V(p) where R/p is smooth, with lifts t_1, ..., t_h of a regular system of parameters of
(R/p)_Q: the length of R_Q/(p^[q] + (t^q)) is l(R_p/p^[q] R_p) * q^h, so

    lambda_e(R_p) = l(R_Q/(I + p^[q] + (t^q))) / q^(ht p + h)."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from frobenius_lab import dedent
from frobenius_lab.exceptions import DomainError
from frobenius_lab.fsplit_lab import splitting_number
from frobenius_lab.ideals import (
    IdealBasis,
    bracket_power,
    dimension,
    ideal_sum,
    local_colength,
)
from frobenius_lab.local_ring import (
    LocalRingPresentation,
    is_smooth_at_origin,
    jacobian_rank,
    lambda_sample,
    translate_to_origin,
)
from frobenius_lab.pool import ordered_map

logger = logging.getLogger(__name__)


@dataclass
class PointRecord:
    point: tuple
    d: int
    smooth: bool
    lambdas: list
    splittings: list

    def to_dict(self):
        return {
            'point': list(self.point),
            'd': self.d,
            'smooth': self.smooth,
            'lambda': [s.value for s in self.lambdas],
            's': [s.value for s in self.splittings],
        }


@dataclass(frozen=True)
class Witness:
    """A closed point Q of V(p) with lifts t of a regular system of parameters of
    (R/p)_Q"""

    point: tuple
    parameters: tuple = ()


@dataclass
class Subvariety:
    prime: IdealBasis
    witnesses: list
    name: str = None

    def label(self):
        return self.name or str(self.prime)


@dataclass(frozen=True)
class GenericValue:
    subvariety: str
    witness: tuple
    e: int
    q: int
    colength: int
    height: int
    h: int
    value: Fraction

    def to_dict(self):
        return {
            'subvariety': self.subvariety,
            'witness': list(self.witness),
            'e': self.e,
            'q': self.q,
            'colength': self.colength,
            'height': self.height,
            'h': self.h,
            'lambda': self.value,
        }


@dataclass(frozen=True)
class SpecializationPair:
    """`special` specializes from `generic`: both are point indices into the scan, or
    `generic` is (subvariety index, witness index) for a generic value"""

    special: int
    generic: object

    @property
    def to_subvariety(self):
        return isinstance(self.generic, tuple)

    def to_dict(self):
        generic = list(self.generic) if self.to_subvariety else self.generic
        return {'special': self.special, 'generic': generic}


@dataclass
class Verdict:
    upper_semicontinuous_lambda: bool = True
    lower_semicontinuous_s: bool = True
    generic_constancy: bool = True
    violations: list = field(default_factory=list)
    outside_constructible_neighbourhood: list = field(default_factory=list)

    def to_dict(self):
        return {
            'upper_semicontinuous_lambda': self.upper_semicontinuous_lambda,
            'lower_semicontinuous_s': self.lower_semicontinuous_s,
            'generic_constancy': self.generic_constancy,
            'violations': self.violations,
            'outside_constructible_neighbourhood': self.outside_constructible_neighbourhood,
        }


@dataclass
class ScanReport:
    name: str
    p: int
    e_values: list
    points: list
    subvarieties: list = field(default_factory=list)
    generic_values: list = field(default_factory=list)
    pairs: list = field(default_factory=list)
    verdict: Verdict = None

    def point_index(self, point):
        for i, record in enumerate(self.points):
            if record.point == tuple(point):
                return i
        return None

    def to_dict(self):
        return {
            'presentation': self.name,
            'p': self.p,
            'e_values': self.e_values,
            'points': [r.to_dict() for r in self.points],
            'subvarieties': [s.label() for s in self.subvarieties],
            'generic_values': [g.to_dict() for g in self.generic_values],
            'pairs': [pair.to_dict() for pair in self.pairs],
            'verdict': self.verdict.to_dict() if self.verdict else None,
        }

    def csv_rows(self):
        """Rows point,e,q,lambda,s for every scanned point and e"""
        rows = [('point', 'e', 'q', 'lambda', 's')]
        for record in self.points:
            label = ' '.join(str(a) for a in record.point)
            for i, sample in enumerate(record.lambdas):
                s = record.splittings[i].value if i < len(record.splittings) else ''
                rows.append((label, sample.e, sample.q, str(sample.value), str(s)))
        return rows


def _scan_point(P, point, e_max, with_splitting, budget):
    local = translate_to_origin(LocalRingPresentation(P.ideal, point, P.name))
    lambdas = [lambda_sample(local, e, budget) for e in range(1, e_max + 1)]
    splittings = []
    if with_splitting:
        splittings = [splitting_number(local, e, budget) for e in range(1, e_max + 1)]
    return PointRecord(
        tuple(point), local.dimension, is_smooth_at_origin(local), lambdas, splittings
    )


def generic_value(P, prime, witness, e, budget=None, name=None):
    """lambda_e(R_p) for the prime `prime` of S containing I, computed at `witness`"""
    ring = P.ring
    Q = tuple(int(a) % ring.p for a in witness.point)
    parameters = [ring.parse(t) if isinstance(t, str) else t for t in witness.parameters]
    prime = ideal_sum(prime, P.ideal)
    for g in prime.generators:
        if g.evaluate(Q):
            msg = 'witness %s is not on V(p): %s takes the value %s there'
            raise DomainError(msg % (Q, g, g.evaluate(Q)))
    shifted = [t - int(t.evaluate(Q)) for t in parameters]
    h = len(shifted)
    d_R = dimension(translate_to_origin(LocalRingPresentation(P.ideal, Q)).ideal, budget)
    d_quotient = dimension(prime, budget)
    if d_quotient != h:
        msg = """witness rejected: R/p has dimension %d but %d parameters were given;
            the lifts must form a regular system of parameters of R/p at %s"""
        raise DomainError(dedent(msg) % (d_quotient, h, Q))
    sliced = LocalRingPresentation(prime, Q)
    n = ring.ngens
    if jacobian_rank(sliced) != n - h:
        msg = 'witness rejected: R/p is not smooth at %s (Jacobian rank %d, need %d)'
        raise DomainError(msg % (Q, jacobian_rank(sliced), n - h))
    with_parameters = LocalRingPresentation(
        IdealBasis(ring, list(prime.generators) + shifted), Q
    )
    if jacobian_rank(with_parameters) != n:
        msg = """witness rejected: %s do not form a regular system of parameters of
            R/p at %s"""
        raise DomainError(dedent(msg) % (', '.join(str(t) for t in shifted), Q))
    height = d_R - h
    fibre = ideal_sum(P.ideal, IdealBasis(ring, shifted))
    if dimension(fibre, budget) != height:
        msg = """height condition fails at %s: ht p + dim R/p = %d + %d but R/(t) has
            dimension %d"""
        raise DomainError(dedent(msg) % (Q, height, h, dimension(fibre, budget)))
    q = ring.field.frobenius_exponent(e)
    K = ideal_sum(
        ideal_sum(P.ideal, bracket_power(prime, q)),
        IdealBasis(ring, [t**q for t in shifted]),
    )
    K = IdealBasis(ring, [g.translate(Q) for g in K.generators])
    count = local_colength(K, budget)
    value = Fraction(count, q ** (height + h))
    label = name or str(prime)
    logger.info('generic lambda_%d along %s at %s = %s', e, label, Q, value)
    return GenericValue(label, Q, e, q, count, height, h, value)


def automatic_pairs(report):
    """Every non-smooth point specializes from every smooth one, and every witness point
    from its subvariety's generic value"""
    pairs = []
    smooth = [i for i, r in enumerate(report.points) if r.smooth]
    for i, record in enumerate(report.points):
        if record.smooth:
            continue
        pairs.extend(SpecializationPair(i, j) for j in smooth)
    for k, subvariety in enumerate(report.subvarieties):
        for w, witness in enumerate(subvariety.witnesses):
            Q = tuple(int(a) % report.p for a in witness.point)
            pairs.append(SpecializationPair(report.point_index(Q), (k, w)))
    return pairs


def scan_points(
    P, points, e_max, pairs=None, subvarieties=(), budget=None, threads=1, with_splitting=True
):
    """lambda_e and s_e for e <= e_max at every point, generic values along each
    subvariety at each of its witnesses, and the semi-continuity verdict. `pairs` is a
    list of (special, generic) point indices; by default pairs are chosen
    automatically."""
    if e_max < 1:
        raise DomainError('e_max must be at least 1, got %d' % e_max)
    points = [tuple(int(a) % P.p for a in point) for point in points]
    for subvariety in subvarieties:
        for witness in subvariety.witnesses:
            Q = tuple(int(a) % P.p for a in witness.point)
            if Q not in points:
                points.append(Q)
    for point in points:
        LocalRingPresentation(P.ideal, point).check_point()
    records, error = ordered_map(
        lambda point: _scan_point(P, point, e_max, with_splitting, budget),
        points,
        threads,
    )
    report = ScanReport(
        P.name or str(P.ideal), P.p, list(range(1, e_max + 1)), records, list(subvarieties)
    )
    jobs = [
        (k, w, e)
        for k, subvariety in enumerate(report.subvarieties)
        for w in range(len(subvariety.witnesses))
        for e in range(1, e_max + 1)
    ]

    def generic(job):
        k, w, e = job
        subvariety = report.subvarieties[k]
        return generic_value(
            P, subvariety.prime, subvariety.witnesses[w], e, budget, subvariety.label()
        )

    report.generic_values, _ = ordered_map(generic, jobs, threads)
    if pairs is None:
        report.pairs = automatic_pairs(report)
    else:
        report.pairs = [SpecializationPair(i, j) for i, j in pairs]
        for pair in report.pairs:
            if not 0 <= pair.special < len(records) or not 0 <= pair.generic < len(records):
                raise DomainError('specialization pair %s refers to an unknown point' % (pair,))
    report.verdict = semicontinuity_verdict(report)
    return report


def _generic_lambdas(report, k, w):
    label = report.subvarieties[k].label()
    witness = tuple(int(a) % report.p for a in report.subvarieties[k].witnesses[w].point)
    return {
        g.e: g.value
        for g in report.generic_values
        if g.subvariety == label and g.witness == witness
    }


def semicontinuity_verdict(report):
    """Exact comparisons over every specialization pair: lambda_e(special) >=
    lambda_e(generic) and s_e(special) <= s_e(generic)"""
    verdict = Verdict()
    if not report.pairs:
        logger.warning('no specialization pairs in the scan; verdicts hold vacuously')
    for pair in report.pairs:
        special = report.points[pair.special]
        if pair.to_subvariety:
            generic_lambda = _generic_lambdas(report, *pair.generic)
            generic_s = {}
        else:
            other = report.points[pair.generic]
            generic_lambda = {s.e: s.value for s in other.lambdas}
            generic_s = {s.e: s.value for s in other.splittings}
        for sample in special.lambdas:
            e = sample.e
            if e in generic_lambda and sample.value < generic_lambda[e]:
                verdict.upper_semicontinuous_lambda = False
                verdict.violations.append(
                    {
                        'invariant': 'lambda',
                        'e': e,
                        'pair': pair.to_dict(),
                        'special': sample.value,
                        'generic': generic_lambda[e],
                    }
                )
        for sample in special.splittings:
            e = sample.e
            if e in generic_s and sample.value > generic_s[e]:
                verdict.lower_semicontinuous_s = False
                verdict.violations.append(
                    {
                        'invariant': 's',
                        'e': e,
                        'pair': pair.to_dict(),
                        'special': sample.value,
                        'generic': generic_s[e],
                    }
                )
    for subvariety in report.subvarieties:
        label = subvariety.label()
        by_e = {}
        for g in report.generic_values:
            if g.subvariety == label:
                by_e.setdefault(g.e, []).append(g)
        for e, values in sorted(by_e.items()):
            if len(set(g.value for g in values)) > 1:
                verdict.generic_constancy = False
                verdict.outside_constructible_neighbourhood.append(
                    {
                        'subvariety': label,
                        'e': e,
                        'values': [
                            {'witness': list(g.witness), 'lambda': g.value} for g in values
                        ],
                    }
                )
                logger.warning(
                    'generic lambda_%d along %s differs between witnesses; some witness '
                    'lies outside the constructible neighbourhood',
                    e,
                    label,
                )
    return verdict
