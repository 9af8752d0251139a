#####################################################################
#                                                                   #
# tame_curves.py                                                    #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
"""One-dimensional complete local rings given by branch data, and their tame
invariants.

A curve has branches 1..r. Branch i has a numerical semigroup S_i, the value semigroup
of the branch ring inside F_p[[t_i]], and a cross valuation beta_i, the least valuation
on branch i of an element vanishing on every other branch (0 for a single branch). The
ring modelled is

    A = F_p + sum_i span{ t_i^a : a in S_i, a > 0, a >= beta_i }

inside the normalization F_p[[t_1]] x ... x F_p[[t_r]]. With gamma_i the least integer
>= conductor(S_i) + beta_i that p does not divide, the parameter T = sum_i t_i^gamma_i
makes A finite over F_p[[T]] of generic degree delta = sum gamma_i, and the basis
{x_i, ..., x_i^gamma_i}, x_i = t_i^(gamma_i + 1) * unit, has a trace discriminant of
T-adic valuation Delta = sum (gamma_i + 1)^2."""

import logging
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from frobenius_lab import dedent
from frobenius_lab.exceptions import DomainError, PrecisionError, ValidationError
from frobenius_lab.prime_field import FieldConfig
from frobenius_lab.series import TruncatedSeries, det_mod_p, series_determinant

logger = logging.getLogger(__name__)

MAX_BRANCHES = 4
DEFAULT_PRECISION_CAP = 4096


class NumericalSemigroup(object):
    """The submonoid of the non-negative integers generated by `generators`, which must
    have gcd 1"""

    def __init__(self, generators):
        generators = sorted(set(int(g) for g in generators))
        if not generators or generators[0] < 1:
            raise ValidationError('semigroup generators must be positive integers')
        if math.gcd(*generators) != 1:
            msg = """semigroup generators %s have gcd %d; a numerical semigroup needs
                gcd 1 (finitely many gaps)"""
            raise ValidationError(dedent(msg) % (generators, math.gcd(*generators)))
        self.generators = tuple(generators)
        # Sieve until a run of min(generators) consecutive members, after which every
        # integer is a member:
        m = generators[0]
        member = [True]
        run = 0
        n = 0
        while run < m:
            n += 1
            inside = any(n >= g and member[n - g] for g in generators)
            member.append(inside)
            run = run + 1 if inside else 0
        self._conductor = n - m + 1 if n >= m else 0
        self._member = member[: self._conductor + 1]
        if generators[0] == 1:
            self._conductor = 0
            self._member = [True]

    def __contains__(self, n):
        if n < 0:
            return False
        if n >= self._conductor:
            return True
        return self._member[n]

    @property
    def conductor(self):
        """Least c with every integer >= c in the semigroup"""
        return self._conductor

    @property
    def frobenius_number(self):
        return self._conductor - 1

    @property
    def gaps(self):
        return [n for n in range(self._conductor) if n not in self]

    @property
    def genus(self):
        return len(self.gaps)

    @property
    def multiplicity(self):
        return self.generators[0]

    def elements_up_to(self, bound):
        return [n for n in range(bound + 1) if n in self]

    def apery_set(self, m=None):
        """For each residue class mod m, the least member in that class"""
        m = m or self.multiplicity
        result = [None] * m
        n = 0
        while any(w is None for w in result):
            if n in self and result[n % m] is None:
                result[n % m] = n
            n += 1
        return result

    @property
    def minimal_generators(self):
        minimal = []
        for g in self.generators:
            if not _in_span(g, minimal):
                minimal.append(g)
        return minimal

    def __eq__(self, other):
        if not isinstance(other, NumericalSemigroup):
            return NotImplemented
        return self.minimal_generators == other.minimal_generators

    def __hash__(self):
        return hash(tuple(self.minimal_generators))

    def __str__(self):
        return '<%s>' % ', '.join(str(g) for g in self.minimal_generators)


def _in_span(n, generators):
    reachable = [True] + [False] * n
    for k in range(1, n + 1):
        reachable[k] = any(k >= g and reachable[k - g] for g in generators)
    return reachable[n]


@dataclass(frozen=True)
class Branch:
    semigroup: NumericalSemigroup
    beta: int = 0

    def positive_elements_up_to(self, bound):
        """Exponents a > 0, a >= beta, a in S with a <= bound: the monomials of this
        branch inside A"""
        return [a for a in range(max(self.beta, 1), bound + 1) if a in self.semigroup]

    def in_ring(self, a):
        return a > 0 and a >= self.beta and a in self.semigroup


class BranchCurve(object):
    """Complete local ring over F_p with residue field F_p, given by branch data"""

    def __init__(self, p, branches, name=None):
        self.field = FieldConfig(p) if not isinstance(p, FieldConfig) else p
        self.branches = tuple(branches)
        self.name = name
        if not self.branches:
            raise ValidationError('a curve needs at least one branch')
        if len(self.branches) > MAX_BRANCHES:
            msg = 'at most %d branches are supported, got %d'
            raise ValidationError(msg % (MAX_BRANCHES, len(self.branches)))
        if len(self.branches) == 1:
            if self.branches[0].beta != 0:
                msg = """a single branch has cross valuation 0 (no other branch to
                    vanish on), got %d"""
                raise ValidationError(dedent(msg) % self.branches[0].beta)
        else:
            for i, branch in enumerate(self.branches):
                if branch.beta <= 0:
                    msg = """branch %d: an element vanishing on the other branches lies
                        in the maximal ideal, so its cross valuation must be positive"""
                    raise ValidationError(dedent(msg) % (i + 1))
                if branch.beta not in branch.semigroup:
                    msg = 'branch %d: cross valuation %d is not in the semigroup %s'
                    raise ValidationError(msg % (i + 1, branch.beta, branch.semigroup))

    @property
    def p(self):
        return self.field.p

    @cached_property
    def invariants(self):
        return tame_invariants(self)

    def __str__(self):
        parts = []
        for branch in self.branches:
            text = str(branch.semigroup)
            if branch.beta:
                text += ' @ %d' % branch.beta
            parts.append(text)
        return '%s over F_%d: %s' % (self.name or 'curve', self.p, ', '.join(parts))


@dataclass(frozen=True)
class BranchInvariants:
    beta: int
    gamma0: int
    gamma: int

    def to_dict(self):
        return {'beta': self.beta, 'gamma0': self.gamma0, 'gamma': self.gamma}


@dataclass(frozen=True)
class TameInvariants:
    branches: tuple
    delta: int
    Delta: int

    def to_dict(self):
        return {
            'branches': [b.to_dict() for b in self.branches],
            'delta': self.delta,
            'Delta': self.Delta,
        }


def tame_gamma(p, gamma0, beta):
    """Least gamma >= gamma0 + beta with p not dividing gamma"""
    gamma = gamma0 + beta
    while gamma % p == 0:
        gamma += 1
    return gamma


def tame_invariants(C):
    per_branch = []
    for branch in C.branches:
        gamma0 = branch.semigroup.conductor
        gamma = tame_gamma(C.p, gamma0, branch.beta)
        per_branch.append(BranchInvariants(branch.beta, gamma0, gamma))
    delta = sum(b.gamma for b in per_branch)
    Delta = sum((b.gamma + 1) ** 2 for b in per_branch)
    logger.debug('tame invariants of %s: delta=%d, Delta=%d', C, delta, Delta)
    return TameInvariants(tuple(per_branch), delta, Delta)


@dataclass(frozen=True)
class TameParameter:
    """T = sum_i t_i^gamma_i with its certified valuation on each branch"""

    description: str
    valuations: tuple

    def to_dict(self):
        return {'t': self.description, 'valuations': list(self.valuations)}


def construct_parameter(C, precision=None):
    """The parameter T, vanishing to order gamma_i on branch i. Each t_i^gamma_i lies
    in A because gamma_i >= conductor + beta_i."""
    inv = C.invariants
    labels = []
    valuations = []
    for i, (branch, b) in enumerate(zip(C.branches, inv.branches)):
        if not branch.in_ring(b.gamma):
            msg = 't_%d^%d is not an element of the ring' % (i + 1, b.gamma)
            raise ValidationError(msg)
        N = precision if precision is not None else b.gamma + 1
        series = TruncatedSeries.monomial(C.p, b.gamma, N)
        v = series.valuation()
        if v is None:
            msg = 'precision %d cannot certify the valuation %d of the parameter'
            raise PrecisionError(msg % (N, b.gamma), b.gamma + 1)
        valuations.append(v)
        name = 't' if len(C.branches) == 1 else 't%d' % (i + 1)
        labels.append(name if b.gamma == 1 else '%s^%d' % (name, b.gamma))
    return TameParameter(' + '.join(labels), tuple(valuations))


@dataclass(frozen=True)
class DiscriminantResult:
    valuation: int
    precision: int
    Delta: int

    @property
    def matches(self):
        return self.valuation == self.Delta

    def to_dict(self):
        return {
            'valuation': self.valuation,
            'precision': self.precision,
            'Delta': self.Delta,
            'matches_Delta': self.matches,
        }


def _branch_basis_traces(p, gamma, unit, precision):
    """Trace matrix over F_p[[T]] of {x, ..., x^gamma}, x = t^(gamma+1) w with
    w^gamma = unit(T), in the branch F_p[[t]], T = t^gamma"""
    tau_precision = precision * gamma
    w = unit.nth_root(gamma).inflate(gamma).truncate(tau_precision)
    x = w.shift(gamma + 1).truncate(tau_precision)
    powers = [TruncatedSeries.one(p, tau_precision)]
    for _ in range(2 * gamma):
        powers.append(powers[-1] * x)
    return [
        [powers[i + j].trace_deflate(gamma) for j in range(1, gamma + 1)]
        for i in range(1, gamma + 1)
    ]


def _block_diagonal(p, blocks, precision):
    size = sum(len(block) for block in blocks)
    matrix = [[TruncatedSeries.zero(p, precision) for _ in range(size)] for _ in range(size)]
    offset = 0
    for block in blocks:
        for i, row in enumerate(block):
            for j, entry in enumerate(row):
                matrix[offset + i][offset + j] = entry
        offset += len(block)
    return matrix


def discriminant_valuation(C, precision=None, rng=None, precision_cap=DEFAULT_PRECISION_CAP):
    """T-adic valuation of the trace discriminant of the basis {x_i^j : 1 <= j <=
    gamma_i}, with random units of residue class 1. Starts at precision 2 Delta + 2 and
    doubles on precision errors up to `precision_cap`."""
    inv = C.invariants
    rng = rng if rng is not None else np.random.default_rng(0)
    N = precision if precision is not None else 2 * inv.Delta + 2
    units = [
        TruncatedSeries.random_unit(C.p, max(precision_cap, N), rng) for _ in C.branches
    ]
    while True:
        try:
            blocks = [
                _branch_basis_traces(C.p, b.gamma, unit.truncate(N), N)
                for b, unit in zip(inv.branches, units)
            ]
            result = series_determinant(_block_diagonal(C.p, blocks, N))
        except PrecisionError as e:
            if 2 * N > precision_cap:
                raise PrecisionError(str(e), 2 * N) from None
            logger.info('discriminant needs more precision than %d, doubling', N)
            N *= 2
            continue
        logger.info('discriminant valuation of %s: %d (Delta = %d)', C, result.valuation, inv.Delta)
        return DiscriminantResult(result.valuation, N, inv.Delta)


def _ring_exponents(branch, gamma, N):
    bound = branch.semigroup.conductor + branch.beta + (N + 1) * gamma + 1
    return bound, [a for a in range(1, bound + 1) if branch.in_ring(a)]


def module_generators(C):
    """An F_p-basis of A/TA, i.e. minimal generators of A as an F_p[[T]]-module.
    T = sum t_i^gamma_i lets one t_i^gamma_i be replaced by 1."""
    inv = C.invariants
    generators = ['1']
    dropped = False
    for i, (branch, b) in enumerate(zip(C.branches, inv.branches)):
        name = 't' if len(C.branches) == 1 else 't%d' % (i + 1)
        _, exponents = _ring_exponents(branch, b.gamma, 1)
        for a in exponents:
            if branch.in_ring(a - b.gamma):
                continue
            if a == b.gamma and not dropped:
                dropped = True
                continue
            generators.append(name if a == 1 else '%s^%d' % (name, a))
    return generators


def truncated_quotient_dimension(C, N):
    """dim_{F_p} A/T^N A"""
    inv = C.invariants
    count = 0
    for branch, b in zip(C.branches, inv.branches):
        _, exponents = _ring_exponents(branch, b.gamma, N)
        count += sum(1 for a in exponents if not branch.in_ring(a - N * b.gamma))
    return count


def realized_degree(C, precision=None):
    """Rank of A over F_p[[T]], measured as dim(A/T^N A) / N"""
    N = precision or 2 * C.invariants.Delta + 2
    dim = truncated_quotient_dimension(C, N)
    if dim % N:
        msg = 'A/T^%d A has dimension %d, not a multiple of %d: A is not free'
        raise PrecisionError(msg % (N, dim, N), 2 * N)
    return dim // N


def algebra_generator_count(C):
    """Minimal number of F_p[[T]]-algebra generators of A: dim m/(m^2 + TA)"""
    inv = C.invariants
    survivors = 0
    parameter_survives = False
    for branch, b in zip(C.branches, inv.branches):
        _, exponents = _ring_exponents(branch, b.gamma, 2)
        members = set(exponents)
        for a in exponents:
            if branch.in_ring(a - b.gamma):
                continue
            if any(c in members and branch.in_ring(a - c) for c in exponents if c < a):
                continue
            survivors += 1
            if a == b.gamma:
                parameter_survives = True
    return survivors - (1 if parameter_survives else 0)


@dataclass(frozen=True)
class GeneratorBound:
    generators: int
    delta: int
    mu: int

    @property
    def passed(self):
        return self.generators <= self.delta**self.mu

    def to_dict(self):
        return {
            'generators': self.generators,
            'delta': self.delta,
            'mu': self.mu,
            'bound': self.delta**self.mu,
            'pass': self.passed,
        }


def generator_bound_check(C, mu=None):
    """A needs at most delta^mu module generators over F_p[[T]] when it is generated by
    mu elements as an algebra; mu defaults to the minimal algebra generator count"""
    if mu is None:
        mu = algebra_generator_count(C)
    count = len(module_generators(C))
    return GeneratorBound(count, C.invariants.delta, mu)


@dataclass(frozen=True)
class TameDiscCheck:
    s: int
    b: int
    valuation: int
    expected: int

    @property
    def passed(self):
        return self.valuation == self.expected

    def to_dict(self):
        return {
            's': self.s,
            'b': self.b,
            'valuation': self.valuation,
            'expected': self.expected,
            'pass': self.passed,
        }


def tame_disc_valuation(p, s, b, rng):
    """For F_p[[t]] over F_p[[T]], T = t^s with p not dividing s, and y = t^b w with w a
    random unit and gcd(b, s) = 1: the discriminant of {y, ..., y^s} has valuation
    (s + 1) b"""
    if s % p == 0:
        raise DomainError('the extension must be tame: p = %d divides s = %d' % (p, s))
    if math.gcd(b, s) != 1:
        raise DomainError('need gcd(b, s) = 1, got b = %d, s = %d' % (b, s))
    N = 2 * (s + 1) * b + 2
    tau_precision = N * s
    w = TruncatedSeries.random_unit(p, tau_precision, rng, constant=int(rng.integers(1, p)))
    y = w.shift(b).truncate(tau_precision)
    powers = [TruncatedSeries.one(p, tau_precision)]
    for _ in range(2 * s):
        powers.append(powers[-1] * y)
    matrix = [[powers[i + j].trace_deflate(s) for j in range(1, s + 1)] for i in range(1, s + 1)]
    result = series_determinant(matrix)
    return TameDiscCheck(s, b, result.valuation, (s + 1) * b)


@dataclass(frozen=True)
class SplitEtaleCheck:
    copies: int
    reduction_of_disc: int
    disc_of_reduction: int

    @property
    def passed(self):
        return self.reduction_of_disc == self.disc_of_reduction

    def to_dict(self):
        return {
            'copies': self.copies,
            'reduction_of_disc': self.reduction_of_disc,
            'disc_of_reduction': self.disc_of_reduction,
            'pass': self.passed,
        }


def split_etale_check(p, rng, copies=2, precision=8):
    """Discriminants commute with reduction mod T for the split extension
    F_p[[T]]^copies of F_p[[T]], with Tr(a_1, ..., a_k) = a_1 + ... + a_k and a random
    basis"""
    basis = [
        [TruncatedSeries.random_unit(p, precision, rng, int(rng.integers(0, p))) for _ in range(copies)]
        for _ in range(copies)
    ]
    traces = [
        [sum((u * v for u, v in zip(e, f)), TruncatedSeries.zero(p, precision)) for f in basis]
        for e in basis
    ]
    try:
        disc = series_determinant(traces)
        reduction_of_disc = disc.value.coefficients[0] if disc.valuation == 0 else 0
    except PrecisionError:
        reduction_of_disc = 0
    reduced = [[entry.coefficients[0] for entry in row] for row in traces]
    return SplitEtaleCheck(copies, reduction_of_disc, det_mod_p(reduced, p))


@dataclass(frozen=True)
class CokernelCheck:
    m: int
    D: int
    target_generators: tuple
    checked: int
    failures: tuple

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        return {
            'm': self.m,
            'D': self.D,
            'target_generators': list(self.target_generators),
            'checked': self.checked,
            'failures': list(self.failures),
            'pass': self.passed,
        }


def disc_kills_cokernel(C, m):
    """Monomial check that Disc B^(1/p^m) lies in A^(1/p^m)[B] for a single branch B
    over A = F_p[[T]]: in s = t^(1/p^m), Disc = s^(p^m gamma D) and the target has
    values <gamma, p^m S>, so p^m gamma D + a must lie in that semigroup for every a in
    S. Only the a below the target's conductor need checking."""
    if len(C.branches) != 1:
        raise DomainError('the cokernel check is implemented for single branch curves')
    branch = C.branches[0]
    gamma = C.invariants.branches[0].gamma
    D = C.invariants.Delta
    q = C.p**m
    target = NumericalSemigroup([gamma] + [q * g for g in branch.semigroup.minimal_generators])
    shift = q * gamma * D
    checked = 0
    failures = []
    for a in range(max(target.conductor - shift, 0) + 1):
        if a not in branch.semigroup:
            continue
        checked += 1
        if shift + a not in target:
            failures.append(a)
    return CokernelCheck(m, D, tuple(target.minimal_generators), checked, tuple(failures))
