#####################################################################
#                                                                   #
# prime_field.py                                                    #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
"""Arithmetic in the prime field F_p for a prime p chosen at runtime, and checked
arithmetic for Frobenius exponents q = p^e.

Polynomial code works with plain Python integers in [0, p) for speed and goes
through the :class:`FieldConfig` helpers; :class:`FieldElement` is the value type
exposed to callers."""

from dataclasses import dataclass

from sympy.ntheory.primetest import isprime

from frobenius_lab import dedent
from frobenius_lab.exceptions import (
    CapacityError,
    DomainError,
    FieldDivisionError,
    StructuralError,
)

MAX_PRIME = 2**31
# Largest q = p^e we hand out; exponents must stay inside a signed 64-bit word.
MAX_FROBENIUS_POWER = 2**63 - 1


@dataclass(frozen=True)
class FieldConfig:
    """The prime field F_p"""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise DomainError('characteristic must be an integer, got %r' % (self.p,))
        if not 2 <= self.p < MAX_PRIME:
            msg = """characteristic %d is outside the supported range 2 <= p < 2^31"""
            raise DomainError(dedent(msg) % self.p)
        # sympy's isprime is deterministic (BPSW with no known counterexample,
        # proven correct below 2^64) for the whole supported range:
        if not isprime(self.p):
            raise DomainError('characteristic %d is not prime' % self.p)

    def element(self, value):
        return FieldElement(self, value)

    def elements(self):
        """All elements of F_p in increasing order"""
        return [FieldElement(self, a) for a in range(self.p)]

    def reduce(self, value):
        return value % self.p

    def inv(self, value):
        """Inverse of the integer `value` modulo p"""
        value %= self.p
        if value == 0:
            raise FieldDivisionError('division by zero in F_%d' % self.p)
        return pow(value, self.p - 2, self.p)

    def frobenius_exponent(self, e):
        return frobenius_exponent(self.p, e)

    def __str__(self):
        return 'F_%d' % self.p


class FieldElement(object):
    """An element of F_p, always stored fully reduced"""

    __slots__ = ('field', 'value')

    def __init__(self, field, value):
        self.field = field
        self.value = value % field.p

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                msg = 'cannot combine elements of %s and %s' % (self.field, other.field)
                raise StructuralError(msg)
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.value + b)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.value - b)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, b - self.value)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.value * b)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, -self.value)

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.value * self.field.inv(b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, b * self.field.inv(self.value))

    def __pow__(self, n):
        if n < 0:
            return inverse(self) ** (-n)
        return FieldElement(self.field, pow(self.value, n, self.field.p))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return 'FieldElement(%s, %d)' % (self.field, self.value)

    def __str__(self):
        return str(self.value)


def inverse(a):
    """Multiplicative inverse of a nonzero field element"""
    return FieldElement(a.field, a.field.inv(a.value))


def frobenius_exponent(p, e):
    """Return q = p**e, refusing values that do not fit in 63 bits"""
    if e < 0:
        raise DomainError('Frobenius exponent e must be non-negative, got %d' % e)
    q = 1
    for _ in range(e):
        q *= p
        if q > MAX_FROBENIUS_POWER:
            msg = """%d^%d exceeds the capacity limit of 2^63 - 1 for Frobenius
                powers"""
            raise CapacityError(dedent(msg) % (p, e))
    return q


def is_power_of(q, p):
    """Whether q = p^e for some e >= 0"""
    if q < 1:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def log_base(q, p):
    """The e with p^e = q; q must be a power of p"""
    e = 0
    while q > 1:
        q //= p
        e += 1
    return e
