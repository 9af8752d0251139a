#####################################################################
#                                                                   #
# ideals.py                                                         #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
"""Groebner bases over F_p and the ideal calculus built on them: normal forms, sums,
products, intersections, colon ideals, elimination, Frobenius bracket powers, Krull
dimension and exact colength of Artinian quotients."""

import heapq
import itertools
import logging
import math
import time
from dataclasses import dataclass, field

from frobenius_lab import dedent
from frobenius_lab.exceptions import BudgetError, DomainError, StructuralError
from frobenius_lab.polynomials import (
    Polynomial,
    PolynomialRing,
    elimination_order,
    monomial_divides,
    monomial_lcm,
    parse_polynomial_list,
    total_degree,
)
from frobenius_lab.prime_field import is_power_of

logger = logging.getLogger(__name__)

DEFAULT_MAX_PAIRS = 10**6
DEFAULT_MAX_DEGREE = 10**6
DEFAULT_DEADLINE_SECONDS = 600

# Probe limit for local_colength before declaring the quotient not Artinian at the
# origin.
MAX_LOCAL_PROBE = 2**12


@dataclass(frozen=True)
class Budget:
    """Resource limits for Groebner computations. `max_pairs` bounds the critical
    pairs processed by a single Buchberger run, `max_degree` the total degree of any
    basis element, and `deadline_seconds` the wall time since `started` (None for no
    deadline)."""

    max_pairs: int = DEFAULT_MAX_PAIRS
    max_degree: int = DEFAULT_MAX_DEGREE
    deadline_seconds: int = DEFAULT_DEADLINE_SECONDS
    started: float = field(default_factory=time.monotonic, compare=False)

    def check_pairs(self, count):
        if count > self.max_pairs:
            msg = """Groebner computation exceeded the budget of %d critical pairs.
                Raise the pair budget (--budget-pairs) to continue."""
            raise BudgetError(dedent(msg) % self.max_pairs)

    def check_degree(self, degree):
        if degree > self.max_degree:
            msg = 'Groebner basis element of degree %d exceeds the degree budget %d'
            raise BudgetError(msg % (degree, self.max_degree))

    def check_deadline(self):
        if self.deadline_seconds is None:
            return
        if time.monotonic() - self.started > self.deadline_seconds:
            msg = 'computation exceeded the deadline of %s seconds'
            raise BudgetError(msg % self.deadline_seconds)


class IdealBasis(object):
    """An ideal of a polynomial ring given by generators. Zero generators are dropped.
    Groebner bases are cached per monomial order."""

    def __init__(self, ring, generators=()):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                raise TypeError('ideal generators must be Polynomials, got %r' % (g,))
            if g.ring != ring:
                msg = 'generator %s is not in %s' % (g, ring)
                raise StructuralError(msg)
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._groebner = {}

    @classmethod
    def parse(cls, ring, text):
        return cls(ring, parse_polynomial_list(text, ring))

    def groebner(self, order=None, budget=None):
        return groebner(self, order, budget)

    def is_zero(self):
        return not self.generators

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return ideal_product(self, other)

    def __str__(self):
        return '(%s)' % ', '.join(str(g) for g in self.generators)

    def __repr__(self):
        return 'IdealBasis(%s, %s)' % (self.ring, self)


class GroebnerBasis(object):
    """A Groebner basis of an ideal under `order`. When `reduced`, the elements are
    monic, no term of an element is divisible by the leading monomial of another, and
    the elements are sorted by decreasing leading monomial."""

    def __init__(self, ring, order, elements, reduced=True):
        self.ring = ring
        self.order = order
        self.elements = tuple(elements)
        self.reduced = reduced
        self.leading_monomials = tuple(g.leading_monomial(order) for g in self.elements)

    def normal_form(self, f):
        return normal_form(f, self)

    def contains(self, f):
        return not normal_form(f, self)

    def is_unit(self):
        zero = self.ring.zero_monomial()
        return any(m == zero for m in self.leading_monomials)

    def ideal(self):
        return IdealBasis(self.ring, self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.order == other.order
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.ring, self.order, self.elements))

    def __str__(self):
        return '{%s}' % ', '.join(str(g) for g in self.elements)

    def __repr__(self):
        return 'GroebnerBasis(%s, %s, %s)' % (self.ring, self.order, self)


# Term-level helpers. Polynomials here are dicts {monomial: coefficient}, divisors are
# (leading monomial, terms) pairs of monic polynomials.


def _neg_key(order, m):
    return tuple(-k for k in order.key(m))


def _reduce_terms(terms, divisors, order, p):
    """Full reduction of `terms` by `divisors`. Terms are processed from the largest
    down through a heap with lazy deletion."""
    work = dict(terms)
    heap = [(_neg_key(order, m), m) for m in work]
    heapq.heapify(heap)
    remainder = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, None)
        if c is None:
            continue
        for lm, g in divisors:
            if all(a >= b for a, b in zip(m, lm)):
                shift = tuple(a - b for a, b in zip(m, lm))
                for gm, gc in g.items():
                    if gm == lm:
                        continue
                    t = tuple(a + b for a, b in zip(gm, shift))
                    old = work.get(t)
                    value = ((old or 0) - c * gc) % p
                    if value:
                        work[t] = value
                        if old is None:
                            heapq.heappush(heap, (_neg_key(order, t), t))
                    elif old is not None:
                        del work[t]
                break
        else:
            remainder[m] = c
    return remainder


def _monic_terms(terms, order, p):
    lm = max(terms, key=order.key)
    c = terms[lm]
    if c != 1:
        inv = pow(c, p - 2, p)
        terms = {m: a * inv % p for m, a in terms.items()}
    return lm, terms


def _spoly(f, g, p):
    """S-polynomial of two monic (lm, terms) pairs"""
    lm_f, tf = f
    lm_g, tg = g
    lcm = monomial_lcm(lm_f, lm_g)
    sf = tuple(a - b for a, b in zip(lcm, lm_f))
    sg = tuple(a - b for a, b in zip(lcm, lm_g))
    result = {}
    for m, c in tf.items():
        if m != lm_f:
            result[tuple(a + b for a, b in zip(m, sf))] = c
    for m, c in tg.items():
        if m != lm_g:
            t = tuple(a + b for a, b in zip(m, sg))
            value = (result.get(t, 0) - c) % p
            if value:
                result[t] = value
            else:
                result.pop(t, None)
    return result


def _buchberger(polys, order, budget):
    """Buchberger's algorithm with the normal selection strategy and the
    Gebauer-Moeller criteria for discarding critical pairs. Returns the reduced basis
    as a list of monic (lm, terms) pairs."""
    ring = polys[0].ring
    p = ring.p
    key = order.key

    # Interreduce the input first:
    current = [_monic_terms(dict(f.terms), order, p) for f in polys]
    while True:
        current.sort(key=lambda pair: key(pair[0]))
        reduced = []
        for lm, terms in current:
            r = _reduce_terms(terms, reduced, order, p)
            if r:
                reduced.append(_monic_terms(r, order, p))
        if [t for _, t in reduced] == [t for _, t in current]:
            break
        current = reduced

    basis = []  # all polynomials ever added, indexed
    G = set()
    pairs = set()
    pair_heap = []

    def push_pair(i, j):
        lcm = monomial_lcm(basis[i][0], basis[j][0])
        pairs.add((i, j))
        heapq.heappush(pair_heap, (key(lcm), i, j))

    def update(ih):
        # Gebauer-Moeller: filter new pairs (h, g), then old pairs, then G itself.
        mh = basis[ih][0]
        candidates = sorted(G)
        new_pairs = []
        for n, ig in enumerate(candidates):
            mg = basis[ig][0]
            lcm_hg = monomial_lcm(mh, mg)
            coprime = all(a == 0 or b == 0 for a, b in zip(mh, mg))

            def lcm_divides(ix):
                return monomial_divides(monomial_lcm(mh, basis[ix][0]), lcm_hg)

            if coprime or (
                not any(lcm_divides(ix) for ix in candidates[n + 1:])
                and not any(lcm_divides(jx) for _, jx in new_pairs)
            ):
                new_pairs.append((ih, ig))
        for i1, i2 in list(pairs):
            lcm12 = monomial_lcm(basis[i1][0], basis[i2][0])
            if (
                monomial_divides(mh, lcm12)
                and monomial_lcm(basis[i1][0], mh) != lcm12
                and monomial_lcm(basis[i2][0], mh) != lcm12
            ):
                pairs.discard((i1, i2))
        for ih_, ig in new_pairs:
            mg = basis[ig][0]
            if not all(a == 0 or b == 0 for a, b in zip(mh, mg)):
                push_pair(ih_, ig)
        for ig in list(G):
            if monomial_divides(mh, basis[ig][0]):
                G.discard(ig)
        G.add(ih)

    for item in current:
        basis.append(item)
        update(len(basis) - 1)

    processed = 0
    zero_reductions = 0
    while pair_heap:
        _, i, j = heapq.heappop(pair_heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        processed += 1
        budget.check_pairs(processed)
        if processed % 64 == 0:
            budget.check_deadline()
        s = _spoly(basis[i], basis[j], p)
        divisors = sorted((basis[ig] for ig in G), key=lambda pair: key(pair[0]))
        h = _reduce_terms(s, divisors, order, p)
        if not h:
            zero_reductions += 1
            continue
        lm, terms = _monic_terms(h, order, p)
        budget.check_degree(total_degree(lm))
        basis.append((lm, terms))
        update(len(basis) - 1)

    # Tail-reduce each element by the others:
    result = []
    members = sorted(G)
    for ig in members:
        others = [basis[jg] for jg in members if jg != ig]
        r = _reduce_terms(basis[ig][1], others, order, p)
        result.append(_monic_terms(r, order, p))
    result.sort(key=lambda pair: key(pair[0]), reverse=True)
    logger.debug(
        'Buchberger: %d input, %d pairs processed (%d to zero), %d in reduced basis',
        len(polys),
        processed,
        zero_reductions,
        len(result),
    )
    return result


def groebner(I, order=None, budget=None):
    """Reduced Groebner basis of the ideal I under `order` (default: the ring's order)"""
    order = order or I.ring.order
    try:
        return I._groebner[order]
    except KeyError:
        pass
    budget = budget or Budget()
    if not I.generators:
        gb = GroebnerBasis(I.ring, order, [])
    else:
        result = _buchberger(list(I.generators), order, budget)
        elements = [I.ring._make(terms) for _, terms in result]
        gb = GroebnerBasis(I.ring, order, elements)
        for g in I.generators:
            if normal_form(g, gb):
                msg = """the computed basis does not reduce the generator %s to zero,
                    so it does not generate I"""
                raise StructuralError(dedent(msg) % g)
    I._groebner[order] = gb
    return gb


def _as_groebner(ideal, budget=None):
    if isinstance(ideal, GroebnerBasis):
        return ideal
    return groebner(ideal, budget=budget)


def normal_form(f, G):
    """Remainder of f on full reduction by the Groebner basis G"""
    if f.ring != G.ring:
        raise StructuralError('cannot reduce %s modulo an ideal of %s' % (f, G.ring))
    divisors = sorted(
        ((lm, g.terms) for lm, g in zip(G.leading_monomials, G.elements)),
        key=lambda pair: G.order.key(pair[0]),
    )
    return f.ring._make(_reduce_terms(f.terms, divisors, G.order, f.ring.p))


def contains(ideal, f, budget=None):
    return not normal_form(f, _as_groebner(ideal, budget))


def is_subset(I, J, budget=None):
    """Whether I is contained in J"""
    G = _as_groebner(J, budget)
    return all(G.contains(g) for g in I.generators)


def ideals_equal(I, J, budget=None):
    return is_subset(I, J, budget) and is_subset(J, I, budget)


def is_unit_ideal(I, budget=None):
    return _as_groebner(I, budget).is_unit()


def _check_same_ring(I, J):
    if I.ring != J.ring:
        raise StructuralError('ideals of %s and %s cannot be combined' % (I.ring, J.ring))


def ideal_sum(I, J):
    _check_same_ring(I, J)
    return IdealBasis(I.ring, I.generators + J.generators)


def ideal_product(I, J):
    _check_same_ring(I, J)
    return IdealBasis(I.ring, [f * g for f in I.generators for g in J.generators])


def ideal_power(I, n):
    result = IdealBasis(I.ring, [I.ring.one()])
    for _ in range(n):
        result = ideal_product(result, I)
        result = IdealBasis(I.ring, list(dict.fromkeys(result.generators)))
    return result


def maximal_ideal(ring):
    """The ideal (x_1, ..., x_n) of the origin"""
    return IdealBasis(ring, ring.gens())


def bracket_power(I, q):
    """I^[q], generated by the q-th powers of the generators of I"""
    if not is_power_of(q, I.ring.p):
        raise DomainError('%d is not a power of the characteristic %d' % (q, I.ring.p))
    return IdealBasis(I.ring, [g.frobenius(q) for g in I.generators])


def divide(f, g, order=None):
    """Division of f by the single polynomial g: returns (quotient, remainder)"""
    order = order or f.ring.order
    p = f.ring.p
    lm_g = g.leading_monomial(order)
    inv = f.ring.field.inv(g.terms[lm_g])
    quotient = {}
    remainder = f
    rest = {}
    while remainder:
        lm = remainder.leading_monomial(order)
        c = remainder.terms[lm]
        if monomial_divides(lm_g, lm):
            shift = tuple(a - b for a, b in zip(lm, lm_g))
            factor = c * inv % p
            quotient[shift] = (quotient.get(shift, 0) + factor) % p
            remainder = remainder - g.mul_term(shift, factor)
        else:
            rest[lm] = c
            remainder = remainder - f.ring._make({lm: c})
    return f.ring._make({m: c for m, c in quotient.items() if c}), f.ring._make(rest)


def _is_monomial_ideal(I):
    return all(len(g.terms) == 1 for g in I.generators)


def eliminate(I, names, budget=None):
    """The elimination ideal of I with respect to the variables `names`, as an ideal of
    the polynomial ring in the remaining variables"""
    ring = I.ring
    names = list(names)
    for name in names:
        ring.index(name)
    rest = [name for name in ring.names if name not in names]
    order = elimination_order(len(names))
    big = PolynomialRing(tuple(names) + tuple(rest), ring.field, order)
    small = PolynomialRing(tuple(rest), ring.field)
    positions = [ring.index(name) for name in names + rest]
    gens = [
        big._make({tuple(m[i] for i in positions): c for m, c in g.terms.items()})
        for g in I.generators
    ]
    gb = groebner(IdealBasis(big, gens), order, budget)
    k = len(names)
    kept = [
        small._make({m[k:]: c for m, c in g.terms.items()})
        for g, lm in zip(gb.elements, gb.leading_monomials)
        if not any(lm[:k])
    ]
    return IdealBasis(small, kept)


def _auxiliary_name(ring, stem='t'):
    name = '_' + stem
    while name in ring.names:
        name = '_' + name
    return name


def intersection(I, J, budget=None):
    """I intersected with J, eliminating t from t*I + (1 - t)*J"""
    _check_same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return IdealBasis(ring, [])
    if _is_monomial_ideal(I) and _is_monomial_ideal(J):
        gens = []
        for f in I.generators:
            for g in J.generators:
                (m1,), (m2,) = f.terms, g.terms
                gens.append(ring.monomial(monomial_lcm(m1, m2)))
        return IdealBasis(ring, list(dict.fromkeys(gens)))
    big = ring.extend([_auxiliary_name(ring)])
    t = big.gen(0)
    gens = [t * ring.embed(f, big) for f in I.generators]
    gens += [(1 - t) * ring.embed(g, big) for g in J.generators]
    gb = groebner(IdealBasis(big, gens), big.order, budget)
    kept = [
        ring._make({m[1:]: c for m, c in g.terms.items()})
        for g, lm in zip(gb.elements, gb.leading_monomials)
        if lm[0] == 0
    ]
    return IdealBasis(ring, kept)


def colon_by_element(J, f, budget=None):
    """(J : f) = {g : g*f in J}, computed as (J intersected with (f)) / f"""
    ring = J.ring
    if f.ring != ring:
        raise StructuralError('%s is not in %s' % (f, ring))
    if not f:
        return IdealBasis(ring, [ring.one()])
    if J.is_zero():
        return IdealBasis(ring, [])
    if f.is_constant():
        return J
    if contains(J, f, budget):
        return IdealBasis(ring, [ring.one()])
    if _is_monomial_ideal(J) and len(f.terms) == 1:
        (mf,) = f.terms
        gens = []
        for g in J.generators:
            (mg,) = g.terms
            gens.append(ring.monomial(tuple(max(a - b, 0) for a, b in zip(mg, mf))))
        return IdealBasis(ring, list(dict.fromkeys(gens)))
    if len(J.generators) == 1:
        quotient, remainder = divide(J.generators[0], f)
        if not remainder:
            return IdealBasis(ring, [quotient])
    meet = intersection(J, IdealBasis(ring, [f]), budget)
    gens = []
    for g in meet.generators:
        quotient, remainder = divide(g, f)
        assert not remainder, 'intersection element not divisible by the colon element'
        gens.append(quotient)
    return IdealBasis(ring, gens)


def colon(J, K, budget=None):
    """(J : K), the intersection over generators k of K of (J : k)"""
    _check_same_ring(J, K)
    ring = J.ring
    if K.is_zero():
        return IdealBasis(ring, [ring.one()])
    result = None
    for k in K.generators:
        part = colon_by_element(J, k, budget)
        if result is None:
            result = part
        else:
            result = intersection(result, part, budget)
    if result.generators:
        # A reduced basis keeps downstream computations small:
        result = IdealBasis(ring, groebner(result, budget=budget).elements)
    return result


def dimension(I, budget=None):
    """Krull dimension of S/I: the size of a largest set of variables independent modulo
    the leading ideal"""
    G = _as_groebner(I, budget)
    if G.is_unit():
        raise DomainError('the unit ideal has no dimension: S/I is the zero ring')
    n = G.ring.ngens
    supports = [frozenset(i for i, a in enumerate(m) if a) for m in G.leading_monomials]
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            chosen = frozenset(subset)
            if not any(support <= chosen for support in supports):
                return size
    return 0


def _minimalize(monomials):
    result = []
    for m in sorted(set(monomials), key=sum):
        if not any(monomial_divides(g, m) for g in result):
            result.append(m)
    return result


def _count_standard_monomials(gens, n):
    """Number of monomials outside the monomial ideal generated by `gens`, which must
    contain a pure power of every variable. Splits recursively with
    l(S/M) = l(S/(M + x_i^b)) + l(S/(M : x_i^b))."""
    total = 0
    nodes = 0
    stack = [tuple(_minimalize(gens))]
    while stack:
        gens = stack.pop()
        nodes += 1
        if any(not any(m) for m in gens):
            continue
        pure = [0] * n
        mixed = []
        for m in gens:
            support = [i for i, a in enumerate(m) if a]
            if len(support) == 1:
                pure[support[0]] = m[support[0]]
            else:
                mixed.append(m)
        if not mixed:
            total += math.prod(pure)
            continue
        used = sorted(set(i for m in mixed for i, a in enumerate(m) if a))
        if len(used) < n:
            # Variables occurring only in their pure power split off as a factor:
            factor = math.prod(pure[i] for i in range(n) if i not in used)
            projected = [
                tuple(m[i] for i in used) for m in gens if any(m[i] for i in used)
            ]
            total += factor * _count_standard_monomials(projected, len(used))
            continue
        m = mixed[0]
        i = max(range(n), key=lambda j: m[j])
        b = m[i]
        plus = [g for g in gens if g[i] < b]
        plus.append(tuple(b if j == i else 0 for j in range(n)))
        quotient = [g[:i] + (max(g[i] - b, 0),) + g[i + 1:] for g in gens]
        stack.append(tuple(_minimalize(plus)))
        stack.append(tuple(_minimalize(quotient)))
    logger.debug('colength recursion visited %d monomial ideals', nodes)
    return total


def colength(I, budget=None):
    """dim_{F_p} S/I, counted on the leading ideal; S/I must be finite-dimensional"""
    G = _as_groebner(I, budget)
    if G.is_unit():
        return 0
    n = G.ring.ngens
    leading = _minimalize(G.leading_monomials)
    for i in range(n):
        if not any(m[i] and not any(m[j] for j in range(n) if j != i) for m in leading):
            msg = """S/I is not finite-dimensional: no leading monomial is a pure
                power of %s, so all powers of %s are standard monomials"""
            name = G.ring.names[i]
            raise DomainError(dedent(msg) % (name, name))
    if n == 0:
        return 1
    return _count_standard_monomials(leading, n)


def local_colength(K, budget=None):
    """Length of (S/K) localized at the origin. Adds pure powers x_i^N, doubling N until
    the colength stabilizes: equality at N and 2N forces the powers into K locally."""
    ring = K.ring
    if is_unit_ideal(K, budget):
        return 0
    N = 2
    previous = None
    while N <= MAX_LOCAL_PROBE:
        powers = IdealBasis(ring, [g**N for g in ring.gens()])
        current = colength(ideal_sum(K, powers), budget)
        logger.debug('local colength probe N=%d: %d', N, current)
        if current == previous:
            return current
        previous = current
        N *= 2
    msg = """(S/K) localized at the origin does not have finite length: the colength
        still grows with x_i^N added for N = %d"""
    raise DomainError(dedent(msg) % MAX_LOCAL_PROBE)


def frobenius_maximal(ring, q):
    """m^[q] = (x_1^q, ..., x_n^q)"""
    return IdealBasis(ring, [g.frobenius(q) for g in ring.gens()])
