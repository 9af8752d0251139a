#####################################################################
#                                                                   #
# polynomials.py                                                    #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
"""Sparse multivariate polynomials over F_p.

A monomial is a tuple of non-negative exponents, one per ring variable. A
:class:`Polynomial` maps monomials to nonzero coefficients stored as integers in
[0, p). Polynomials are immutable; all arithmetic returns new objects.

Expression grammar accepted by :func:`parse_polynomial`::

    expr     = term , { ( "+" | "-" ) , term } ;
    term     = unary , { "*" , unary } ;
    unary    = ( "+" | "-" ) , unary | power ;
    power    = atom , [ "^" , exponent ] ;
    atom     = integer | name | "(" , expr , ")" ;
    exponent = integer | "(" , intexpr , ")" ;

where ``intexpr`` follows the ``expr`` grammar but contains integers only.
"""

import re
from dataclasses import dataclass, field
from functools import reduce

from frobenius_lab import dedent
from frobenius_lab.exceptions import CapacityError, ParseError, StructuralError
from frobenius_lab.prime_field import FieldConfig, FieldElement

# Per-variable exponent bound. Keeps total degrees of monomials in a few thousand
# variables far inside 63 bits.
MAX_EXPONENT = 2**40

ORDER_KINDS = ('grevlex', 'lex', 'elimination')


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order. `kind` is one of 'grevlex', 'lex' or 'elimination'; the
    elimination order compares the first `block` variables by grevlex and breaks ties
    with grevlex on the remaining variables, so any monomial involving the first block
    is larger than every monomial free of it."""

    kind: str = 'grevlex'
    block: int = 0
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise ValueError('unknown monomial order %r' % (self.kind,))
        if self.kind == 'elimination' and self.block < 1:
            raise ValueError('elimination order needs a block size >= 1')

    def key(self, m):
        """Flat integer tuple such that a > b in this order iff key(a) > key(b)"""
        try:
            return self._cache[m]
        except KeyError:
            pass
        if self.kind == 'grevlex':
            k = _grevlex_key(m)
        elif self.kind == 'lex':
            k = m
        else:
            k = _grevlex_key(m[:self.block]) + _grevlex_key(m[self.block:])
        self._cache[m] = k
        return k

    def __str__(self):
        if self.kind == 'elimination':
            return 'elimination(%d)' % self.block
        return self.kind


def _grevlex_key(m):
    return (sum(m),) + tuple(-a for a in reversed(m))


GREVLEX = MonomialOrder('grevlex')
LEX = MonomialOrder('lex')


def elimination_order(block):
    return MonomialOrder('elimination', block)


def compare_monomials(a, b, order=GREVLEX):
    """Return 1, 0 or -1 as a > b, a == b or a < b in the given order"""
    if len(a) != len(b):
        msg = 'cannot compare monomials with %d and %d exponents' % (len(a), len(b))
        raise StructuralError(msg)
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def total_degree(m):
    d = sum(m)
    if d > 2**63 - 1:
        raise CapacityError('total degree %d does not fit in 63 bits' % d)
    return d


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a, b):
    """a / b, assuming b divides a"""
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def monomial_divides(b, a):
    """Whether b divides a"""
    return all(y <= x for x, y in zip(a, b))


def _check_exponents(m):
    for a in m:
        if a > MAX_EXPONENT:
            msg = 'exponent %d exceeds the capacity limit 2^40' % a
            raise CapacityError(msg)


@dataclass(frozen=True)
class PolynomialRing:
    """The ring F_p[x_1, ..., x_n] with named variables. `order` is the default
    order used for printing and leading terms; it is not part of ring identity."""

    names: tuple
    field: FieldConfig
    order: MonomialOrder = field(default=GREVLEX, compare=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, 'names', names)
        if len(set(names)) != len(names):
            raise StructuralError('duplicate variable names in %s' % (names,))
        for name in names:
            if not re.fullmatch(r'[A-Za-z_][A-Za-z0-9_]*', name):
                raise StructuralError('invalid variable name %r' % (name,))

    @property
    def p(self):
        return self.field.p

    @property
    def ngens(self):
        return len(self.names)

    def zero_monomial(self):
        return (0,) * len(self.names)

    def _make(self, terms):
        """Wrap an already reduced term dict without checks"""
        return Polynomial(self, terms, _trusted=True)

    def zero(self):
        return self._make({})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = int(c) % self.p
        return self._make({self.zero_monomial(): c} if c else {})

    def monomial(self, exponents, coefficient=1):
        return Polynomial(self, {tuple(exponents): coefficient})

    def gen(self, i):
        if isinstance(i, str):
            i = self.index(i)
        m = [0] * self.ngens
        m[i] = 1
        return self._make({tuple(m): 1})

    def gens(self):
        return [self.gen(i) for i in range(self.ngens)]

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise StructuralError('%r is not a variable of %s' % (name, self)) from None

    def parse(self, text):
        return parse_polynomial(text, self)

    def with_order(self, order):
        return PolynomialRing(self.names, self.field, order)

    def extend(self, new_names, order=None):
        """A ring with `new_names` prepended to the variables, for elimination"""
        if order is None:
            order = elimination_order(len(new_names))
        return PolynomialRing(tuple(new_names) + self.names, self.field, order)

    def embed(self, f, ring):
        """Map f into `ring`, whose last ngens variables are this ring's variables"""
        pad = (0,) * (ring.ngens - self.ngens)
        return ring._make({pad + m: c for m, c in f.terms.items()})

    def __str__(self):
        return '%s[%s]' % (self.field, ', '.join(self.names))


class Polynomial(object):
    """An element of a :class:`PolynomialRing`. `terms` maps exponent tuples to
    nonzero integer coefficients in [0, p)."""

    __slots__ = ('ring', 'terms', '_hash')

    def __init__(self, ring, terms, _trusted=False):
        self.ring = ring
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        p = ring.p
        n = ring.ngens
        reduced = {}
        for m, c in terms.items():
            m = tuple(int(a) for a in m)
            if len(m) != n:
                msg = 'monomial %s has %d exponents in a ring with %d variables'
                raise StructuralError(msg % (m, len(m), n))
            if any(a < 0 for a in m):
                raise ValueError('negative exponent in %s' % (m,))
            _check_exponents(m)
            c = (reduced.get(m, 0) + int(c)) % p
            if c:
                reduced[m] = c
            else:
                reduced.pop(m, None)
        self.terms = reduced

    # Basic queries

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self):
        return all(not any(m) for m in self.terms)

    def constant_coefficient(self):
        return self.terms.get(self.ring.zero_monomial(), 0)

    def coefficient(self, m):
        return FieldElement(self.ring.field, self.terms.get(tuple(m), 0))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(total_degree(m) for m in self.terms)

    def order_at_origin(self):
        """Least total degree of a term, i.e. the largest n with f in m^n, where m
        is the ideal of the origin. None for the zero polynomial."""
        if not self.terms:
            return None
        return min(sum(m) for m in self.terms)

    def degree_in(self, i):
        return max((m[i] for m in self.terms), default=0)

    def sorted_monomials(self, order=None):
        order = order or self.ring.order
        return sorted(self.terms, key=order.key, reverse=True)

    def leading_monomial(self, order=None):
        order = order or self.ring.order
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order=None):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order=None):
        if not self.terms:
            return self
        c = self.leading_coefficient(order)
        if c == 1:
            return self
        return self.scale(self.ring.field.inv(c))

    # Arithmetic

    def _check_ring(self, other):
        if self.ring != other.ring:
            msg = 'cannot combine polynomials from %s and %s' % (self.ring, other.ring)
            raise StructuralError(msg)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check_ring(other)
            return other
        if isinstance(other, FieldElement):
            return self.ring.constant(other.value)
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._combine(other, self.ring.p - 1)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other._combine(self, self.ring.p - 1)

    def _combine(self, other, factor):
        p = self.ring.p
        terms = dict(self.terms)
        for m, c in other.terms.items():
            c = (terms.get(m, 0) + factor * c) % p
            if c:
                terms[m] = c
            else:
                terms.pop(m, None)
        return self.ring._make(terms)

    def __neg__(self):
        p = self.ring.p
        return self.ring._make({m: p - c for m, c in self.terms.items()})

    def scale(self, c):
        c = int(c) % self.ring.p
        if not c:
            return self.ring.zero()
        p = self.ring.p
        return self.ring._make({m: c * a % p for m, a in self.terms.items()})

    def mul_term(self, mono, c=1):
        """Multiply by the term c * x^mono"""
        c = int(c) % self.ring.p
        if not c or not self.terms:
            return self.ring.zero()
        bounds = [self.degree_in(i) + a for i, a in enumerate(mono)]
        if bounds and max(bounds) > MAX_EXPONENT:
            _check_exponents(bounds)
        p = self.ring.p
        return self.ring._make(
            {monomial_mul(m, mono): c * a % p for m, a in self.terms.items()}
        )

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.ring.zero()
        n = self.ring.ngens
        # The x_i-degree of a product is the sum of the x_i-degrees, so checking the
        # bounds up front is exact:
        bounds = [self.degree_in(i) + other.degree_in(i) for i in range(n)]
        _check_exponents(bounds)
        p = self.ring.p
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = (terms.get(m, 0) + c1 * c2) % p
        return self.ring._make({m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def frobenius(self, q):
        """The q-th power for q a power of p: coefficients are fixed by Frobenius on
        F_p, so each monomial is simply raised to the q-th power"""
        bounds = [self.degree_in(i) * q for i in range(self.ring.ngens)]
        _check_exponents(bounds)
        return self.ring._make(
            {tuple(a * q for a in m): c for m, c in self.terms.items()}
        )

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError('polynomial exponent must be a non-negative integer')
        if n == 0:
            return self.ring.one()
        if not self.terms:
            return self.ring.zero()
        _check_exponents([self.degree_in(i) * n for i in range(self.ring.ngens)])
        # Write n in base p; f^(d p^i) = (Frob^i f)^d.
        p = self.ring.p
        result = self.ring.one()
        q = 1
        while n:
            n, digit = divmod(n, p)
            if digit:
                result = result * _small_power(self.frobenius(q), digit)
            q *= p
        return result

    def substitute(self, images):
        """Replace variable i by images[i] (polynomials in a common ring)"""
        if len(images) != self.ring.ngens:
            raise StructuralError('need one image per variable')
        target = images[0].ring if images else self.ring
        power_cache = {}

        def power(i, a):
            key = (i, a)
            if key not in power_cache:
                power_cache[key] = images[i] ** a
            return power_cache[key]

        result = target.zero()
        for m, c in self.terms.items():
            term = target.constant(c)
            for i, a in enumerate(m):
                if a:
                    term = term * power(i, a)
            result = result + term
        return result

    def translate(self, shift):
        """f(x_1 + a_1, ..., x_n + a_n)"""
        gens = self.ring.gens()
        return self.substitute([g + int(a) for g, a in zip(gens, shift)])

    def derivative(self, i):
        p = self.ring.p
        terms = {}
        for m, c in self.terms.items():
            if m[i] % p:
                dm = m[:i] + (m[i] - 1,) + m[i + 1:]
                terms[dm] = c * m[i] % p
        return self.ring._make(terms)

    def evaluate(self, point):
        p = self.ring.p
        values = [int(a) % p for a in point]
        total = 0
        for m, c in self.terms.items():
            term = c
            for v, a in zip(values, m):
                if a:
                    term = term * pow(v, a, p) % p
            total += term
        return FieldElement(self.ring.field, total)

    # Comparison and printing

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, FieldElement)) and not isinstance(other, bool):
            return self.terms == self.ring.constant(int(other)).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return 'Polynomial(%s, %r)' % (self.ring, format_polynomial(self))


def _small_power(f, n):
    result = f
    for _ in range(n - 1):
        result = result * f
    return result


def format_polynomial(f, order=None):
    """Canonical text form: terms in descending order, coefficients in [0, p),
    explicit '*' and '^'"""
    if not f.terms:
        return '0'
    names = f.ring.names
    pieces = []
    for m in f.sorted_monomials(order):
        c = f.terms[m]
        factors = []
        for name, a in zip(names, m):
            if a == 1:
                factors.append(name)
            elif a:
                factors.append('%s^%d' % (name, a))
        if not factors:
            pieces.append(str(c))
        elif c == 1:
            pieces.append('*'.join(factors))
        else:
            pieces.append('%d*%s' % (c, '*'.join(factors)))
    return ' + '.join(pieces)


# Parser

_TOKEN_RE = re.compile(r'\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))')


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            break
        start = match.start(match.lastindex)
        integer, name, symbol = match.groups()
        if integer is not None:
            tokens.append(('int', int(integer), start))
        elif name is not None:
            tokens.append(('name', name, start))
        else:
            if symbol not in '+-*^()':
                raise ParseError('unexpected character %r' % symbol, start)
            tokens.append((symbol, symbol, start))
        pos = match.end()
    tokens.append(('end', None, len(text)))
    return tokens


class _Parser(object):
    """Recursive descent over the token list. With ring=None it evaluates integer
    expressions (used for parenthesised exponents)."""

    def __init__(self, tokens, ring):
        self.tokens = tokens
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        token = self.tokens[self.i]
        if kind is not None and token[0] != kind:
            found = 'end of input' if token[0] == 'end' else repr(token[1])
            raise ParseError('expected %r, found %s' % (kind, found), token[2])
        self.i += 1
        return token

    def const(self, n):
        return n if self.ring is None else self.ring.constant(n)

    def expr(self):
        value = self.term()
        while self.peek()[0] in '+-' and self.peek()[0] != 'end':
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == '+' else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] == '*':
            self.take()
            value = value * self.unary()
        return value

    def unary(self):
        kind = self.peek()[0]
        if kind == '-':
            self.take()
            return -self.unary()
        if kind == '+':
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] != '^':
            return base
        caret = self.take()
        exponent = self.exponent()
        if self.ring is None:
            if exponent and base not in (0, 1, -1) and exponent > 256:
                raise ParseError('integer exponent too large', caret[2])
            return base ** exponent
        try:
            return base ** exponent
        except CapacityError as e:
            raise ParseError('exponent overflow: %s' % e, caret[2]) from None

    def exponent(self):
        token = self.peek()
        if token[0] == 'int':
            self.take()
            value = token[1]
        elif token[0] == '(':
            self.take()
            value = _Parser(self.tokens, None)
            value.i = self.i
            result = value.expr()
            self.i = value.i
            self.take(')')
            value = result
        else:
            found = 'end of input' if token[0] == 'end' else repr(token[1])
            raise ParseError('expected an exponent, found %s' % found, token[2])
        if value < 0:
            raise ParseError('negative exponent %d' % value, token[2])
        if value > MAX_EXPONENT:
            raise ParseError('exponent overflow: %d exceeds 2^40' % value, token[2])
        return value

    def atom(self):
        token = self.take()
        kind, value, position = token
        if kind == 'int':
            return self.const(value)
        if kind == 'name':
            if self.ring is None:
                raise ParseError('variable %r in an integer exponent' % value, position)
            if value not in self.ring.names:
                raise ParseError('unknown variable %r' % value, position)
            return self.ring.gen(value)
        if kind == '(':
            result = self.expr()
            self.take(')')
            return result
        found = 'end of input' if kind == 'end' else repr(value)
        raise ParseError('unexpected %s' % found, position)


def parse_polynomial(text, ring):
    """Parse `text` into a polynomial of `ring`, raising ParseError with the offending
    position on unknown variables, bad syntax or exponent overflow"""
    tokens = _tokenize(text)
    if tokens[0][0] == 'end':
        raise ParseError('empty expression', 0)
    parser = _Parser(tokens, ring)
    result = parser.expr()
    token = parser.peek()
    if token[0] != 'end':
        raise ParseError('unexpected %r' % (token[1],), token[2])
    return result


def split_top_level(text, separator=','):
    """Split on separators that are not inside parentheses; returns (piece, offset)
    pairs so parse errors can report positions in the original text"""
    pieces = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
        elif ch == separator and depth == 0:
            pieces.append((text[start:i], start))
            start = i + 1
    pieces.append((text[start:], start))
    return pieces


def parse_polynomial_list(text, ring):
    """Parse a comma separated list of expressions. Empty input gives an empty list."""
    if not text.strip():
        return []
    polys = []
    for piece, offset in split_top_level(text):
        try:
            polys.append(parse_polynomial(piece, ring))
        except ParseError as e:
            position = None if e.position is None else e.position + offset
            message = str(e).rsplit(' (at position', 1)[0]
            raise ParseError(message, position) from None
    return polys


def make_ring(p, names, order=GREVLEX):
    """Convenience constructor: make_ring(5, 'x, y, z')"""
    if isinstance(names, str):
        names = [name.strip() for name in names.split(',') if name.strip()]
    if not isinstance(p, FieldConfig):
        p = FieldConfig(p)
    return PolynomialRing(tuple(names), p, order)


def product(polys, ring):
    return reduce(lambda a, b: a * b, polys, ring.one())


__all__ = [
    'MAX_EXPONENT',
    'MonomialOrder',
    'GREVLEX',
    'LEX',
    'elimination_order',
    'compare_monomials',
    'total_degree',
    'monomial_mul',
    'monomial_div',
    'monomial_lcm',
    'monomial_divides',
    'PolynomialRing',
    'Polynomial',
    'format_polynomial',
    'parse_polynomial',
    'parse_polynomial_list',
    'split_top_level',
    'make_ring',
    'product',
    'dedent',
]
