#####################################################################
#                                                                   #
# hk_lab.py                                                         #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
"""Hilbert-Kunz sequences, exact e_HK intervals from the observed convergence rate, and
exact checks of the uniform length bounds comparing Frobenius powers of ideals at
different e."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from frobenius_lab import dedent
from frobenius_lab.exceptions import BudgetError, CapacityError, DomainError
from frobenius_lab.ideals import (
    IdealBasis,
    bracket_power,
    colength,
    colon_by_element,
    contains,
    frobenius_maximal,
    ideal_power,
    ideal_sum,
    ideals_equal,
    is_subset,
    maximal_ideal,
)
from frobenius_lab.local_ring import (
    LocalRingPresentation,
    lambda_sample,
    rank_mod_p,
    translate_to_origin,
)
from frobenius_lab.pool import ordered_map

logger = logging.getLogger(__name__)

# Search limit for nilpotency exponents and filtration lengths.
MAX_NILPOTENCY_SEARCH = 16


@dataclass
class SequenceBounds:
    """Convergence evidence for a sequence v_1, ..., v_E at characteristic p:
    `constant` is the largest p^e |v_e - v_(e+1)|, `interval` the geometric tail bound
    around v_E and `stabilization_index` the least e from which every v_e lies in it."""

    constant: Fraction
    interval: tuple
    stabilization_index: int


def sequence_bounds(samples, p):
    """`samples` is a list of (e, value) pairs with consecutive e"""
    if not samples:
        return None
    constant = Fraction(0)
    for (e, a), (_, b) in zip(samples, samples[1:]):
        constant = max(constant, p**e * abs(a - b))
    E, last = samples[-1]
    radius = constant * Fraction(p, (p - 1) * p**E)
    interval = (last - radius, last + radius)
    index = E
    for e, value in reversed(samples):
        if not interval[0] <= value <= interval[1]:
            break
        index = e
    return SequenceBounds(constant, interval, index)


@dataclass
class HKReport:
    name: str
    p: int
    d: int
    samples: list
    empirical_C: Fraction = Fraction(0)
    ehk_interval: tuple = None
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
            'ehk_interval': list(self.ehk_interval) if self.ehk_interval else None,
            'stabilization_index': self.stabilization_index,
            'truncated': self.truncated,
            'error': self.error,
        }


def hk_sequence(P, e_max, budget=None, threads=1):
    """lambda_1, ..., lambda_{e_max} of P with the empirical constant and e_HK interval.
    A budget or capacity failure at some e gives a truncated report of the samples
    before it."""
    if e_max < 1:
        raise DomainError('e_max must be at least 1, got %d' % e_max)
    P = translate_to_origin(P)

    def sample(e):
        return lambda_sample(P, e, budget)

    samples, error = ordered_map(
        sample, range(1, e_max + 1), threads, stop_on=(BudgetError, CapacityError)
    )
    report = HKReport(P.name or str(P.ideal), P.p, P.dimension, samples)
    if error is not None:
        report.truncated = True
        report.error = str(error)
        logger.warning('Hilbert-Kunz sequence truncated after e=%d: %s', len(samples), error)
    bounds = sequence_bounds([(s.e, s.value) for s in samples], P.p)
    if bounds is not None:
        report.empirical_C = bounds.constant
        report.ehk_interval = bounds.interval
        report.stabilization_index = bounds.stabilization_index
    return report


@dataclass(frozen=True)
class BoundConstants:
    """Constants of the uniform bound. `m` and `Delta` come from a tame curve model when
    `conditional` is False; user supplied constants make the check conditional. e0 and
    b select the filtered variant when e0 > 0 or b > 1."""

    m: int
    Delta: int
    e0: int = 0
    b: int = 1
    conditional: bool = True

    @property
    def filtered(self):
        return self.e0 > 0 or self.b > 1

    def to_dict(self):
        return {
            'm': self.m,
            'Delta': self.Delta,
            'e0': self.e0,
            'b': self.b,
            'conditional': self.conditional,
        }


@dataclass(frozen=True)
class BoundEntry:
    e: int
    e_prime: int
    lhs: Fraction
    rhs: Fraction

    @property
    def passed(self):
        return self.lhs <= self.rhs

    def to_dict(self):
        return {
            'e': self.e,
            'e_prime': self.e_prime,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'pass': self.passed,
        }


@dataclass
class BoundCheck:
    constants: BoundConstants
    entries: list = field(default_factory=list)

    @property
    def passed(self):
        return all(entry.passed for entry in self.entries)

    @property
    def violations(self):
        return [entry for entry in self.entries if not entry.passed]

    def to_dict(self):
        return {
            'constants': self.constants.to_dict(),
            'pairs': [entry.to_dict() for entry in self.entries],
            'pass': self.passed,
        }


def check_socle_pair(P, I, u, budget=None):
    """Require (I :_R u) = m, i.e. ((I_R + I) :_S u) = m_S"""
    P = translate_to_origin(P)
    ring = P.ring
    full = ideal_sum(P.ideal, I)
    quotient = colon_by_element(full, u, budget)
    if not ideals_equal(quotient, maximal_ideal(ring), budget):
        msg = """(I : u) is not the maximal ideal: u = %s does not span the socle of
            R/I for I = %s"""
        raise DomainError(dedent(msg) % (u, I))


def frobenius_length(P, I, u, q, budget=None):
    """l(J^[q]R / I^[q]R) for J = I + (u), as the difference of two colengths of the
    m-primary quotients of S"""
    big = colength(ideal_sum(P.ideal, bracket_power(I, q)), budget)
    J = ideal_sum(I, IdealBasis(I.ring, [u]))
    small = colength(ideal_sum(P.ideal, bracket_power(J, q)), budget)
    return big - small


def verify_pair_bound(P, I, u, e, e_prime, constants, budget=None, checked=False):
    """Compare the normalized lengths l(J^[q]/I^[q]) / q^d at e and e' against the
    uniform bound, single (m Delta p^-e) or filtered
    ((1 + (1 + p^(e-e')) p^e0 b) b m Delta p^-e)."""
    if e > e_prime:
        raise DomainError('need e <= e_prime, got %d > %d' % (e, e_prime))
    P = translate_to_origin(P)
    if not checked:
        check_socle_pair(P, I, u, budget)
    p = P.p
    d = P.dimension
    q = P.ring.field.frobenius_exponent(e)
    q_prime = P.ring.field.frobenius_exponent(e_prime)
    first = Fraction(frobenius_length(P, I, u, q, budget), q**d)
    second = Fraction(frobenius_length(P, I, u, q_prime, budget), q_prime**d)
    lhs = abs(first - second)
    base = Fraction(constants.m * constants.Delta, p**e)
    if constants.filtered:
        factor = 1 + (1 + Fraction(p**e, p**e_prime)) * p**constants.e0 * constants.b
        rhs = factor * constants.b * base
    else:
        rhs = base
    entry = BoundEntry(e, e_prime, lhs, rhs)
    if not entry.passed:
        logger.warning('bound violated at (e, e\') = (%d, %d): %s > %s', e, e_prime, lhs, rhs)
    return entry


def verify_bounds(P, I, u, e_max, constants, budget=None):
    """verify_pair_bound over all pairs 1 <= e <= e' <= e_max"""
    check_socle_pair(P, I, u, budget)
    check = BoundCheck(constants)
    for e in range(1, e_max + 1):
        for e_prime in range(e, e_max + 1):
            check.entries.append(
                verify_pair_bound(P, I, u, e, e_prime, constants, budget, checked=True)
            )
    if constants.conditional:
        logger.warning('bound check uses user supplied constants and is conditional')
    return check


def nilpotency_exponent(P, N, budget=None):
    """Least e0 with N^[p^e0] = 0 in R"""
    P = translate_to_origin(P)
    for e0 in range(MAX_NILPOTENCY_SEARCH + 1):
        q = P.p**e0
        if is_subset(bracket_power(N, q), P.ideal, budget):
            return e0
    msg = 'N = %s is not nilpotent in R up to Frobenius powers p^%d'
    raise DomainError(msg % (N, MAX_NILPOTENCY_SEARCH))


def filtration_length(P, N, budget=None):
    """Least b with N^b = 0 in R, the length of the filtration R > N > ... > N^b = 0"""
    P = translate_to_origin(P)
    for b in range(1, MAX_NILPOTENCY_SEARCH + 1):
        if is_subset(ideal_power(N, b), P.ideal, budget):
            return b
    raise DomainError('N = %s is not nilpotent in R' % (N,))


def verify_filtered_bound(P, N, I, u, e, constants, budget=None):
    """Compare M = R with A = R/N through the filtration by powers of N:
    |b l(J^[e-e0]A / I^[e-e0]A) / p^((e-e0)d) - l(J^[e]R / I^[e]R) / p^(ed)| against
    p^e0 b^2 m Delta p^-e l(J/I), with l(J/I) = 1."""
    P = translate_to_origin(P)
    e0, b = constants.e0, constants.b
    if e <= e0:
        raise DomainError('need e > e0, got e=%d, e0=%d' % (e, e0))
    check_socle_pair(P, I, u, budget)
    quotient = LocalRingPresentation(ideal_sum(P.ideal, N), None, P.name)
    p = P.p
    d = P.dimension
    q = p**e
    q_small = p ** (e - e0)
    a_term = Fraction(b * frobenius_length(quotient, I, u, q_small, budget), q_small**d)
    m_term = Fraction(frobenius_length(P, I, u, q, budget), q**d)
    lhs = abs(a_term - m_term)
    rhs = Fraction(p**e0 * b**2 * constants.m * constants.Delta, q)
    return BoundEntry(e, e, lhs, rhs)


@dataclass(frozen=True)
class HypersurfaceCheck:
    n: int
    e: int
    q: int
    colength: int
    bound: int

    @property
    def passed(self):
        return self.colength <= self.bound

    def to_dict(self):
        return {
            'n': self.n,
            'e': self.e,
            'q': self.q,
            'colength': self.colength,
            'bound': self.bound,
            'pass': self.passed,
        }


def hypersurface_bound(ring, F, n, e, budget=None):
    """l(S/((F) + m^[q])) <= n q^(d-1) for S regular of dimension d and F not in
    m^(n+1)"""
    order = F.order_at_origin()
    if order is None or order > n:
        msg = """F = %s lies in m^%d, so n = %d is too small for the hypersurface
            bound"""
        raise DomainError(dedent(msg) % (F, n + 1, n))
    q = ring.field.frobenius_exponent(e)
    d = ring.ngens
    count = colength(ideal_sum(IdealBasis(ring, [F]), frobenius_maximal(ring, q)), budget)
    bound = n * q ** (d - 1) if d >= 1 else n
    return HypersurfaceCheck(n, e, q, count, bound)


def basic_lengths_check(P, I, u, q, budget=None):
    """Both sides of l(R/(I^[q] :_R u^q)) = l(J^[q]/I^[q]) for (I : u) = m, J = I + (u),
    computed independently"""
    P = translate_to_origin(P)
    check_socle_pair(P, I, u, budget)
    ring = P.ring
    bracketed = ideal_sum(P.ideal, bracket_power(I, q))
    colon_ideal = colon_by_element(bracketed, u.frobenius(q), budget)
    lhs = colength(ideal_sum(P.ideal, colon_ideal), budget)
    rhs = frobenius_length(P, I, u, q, budget)
    logger.debug('basic lengths at q=%d in %s: %d vs %d', q, ring, lhs, rhs)
    return lhs, rhs


def random_socle_instance(ring, rng, max_exponent=4):
    """A random m-primary ideal I and u with (I : u) = m in a polynomial ring: a random
    monomial staircase, one of its socle monomials, and a random linear change of
    coordinates applied to both"""
    n = ring.ngens
    gens = []
    for i in range(n):
        exps = [0] * n
        exps[i] = int(rng.integers(1, max_exponent + 1))
        gens.append(tuple(exps))
    for _ in range(int(rng.integers(0, 3))):
        exps = tuple(int(a) for a in rng.integers(0, max_exponent, size=n))
        if any(exps):
            gens.append(exps)
    monomial_ideal = IdealBasis(ring, [ring.monomial(m) for m in gens])
    socle = []
    bound = [max(m[i] for m in gens) for i in range(n)]
    for exps in _box(bound):
        u = ring.monomial(exps)
        if contains(monomial_ideal, u):
            continue
        if all(contains(monomial_ideal, u * x) for x in ring.gens()):
            socle.append(u)
    u = socle[int(rng.integers(0, len(socle)))]
    images = _random_linear_change(ring, rng)
    I = IdealBasis(ring, [g.substitute(images) for g in monomial_ideal.generators])
    return I, u.substitute(images)


def _box(bound):
    if not bound:
        yield ()
        return
    for a in range(bound[0] + 1):
        for rest in _box(bound[1:]):
            yield (a,) + rest


def _random_linear_change(ring, rng):
    n = ring.ngens
    p = ring.p
    while True:
        matrix = rng.integers(0, p, size=(n, n))
        if rank_mod_p(matrix, p) == n:
            break
    gens = ring.gens()
    return [
        sum((gens[j].scale(int(matrix[i, j])) for j in range(n)), ring.zero())
        for i in range(n)
    ]
