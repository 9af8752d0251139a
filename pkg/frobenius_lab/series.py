#####################################################################
#                                                                   #
# series.py                                                         #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
"""Truncated power series over F_p, f = c_0 + c_1 t + ... + O(t^N).

The precision N of a result is the minimum of the precisions of its operands, which
never overstates what is known. Division by t^v lowers the precision by v."""

from dataclasses import dataclass

import numpy as np
from sympy.ntheory.residue_ntheory import nthroot_mod

from frobenius_lab import dedent
from frobenius_lab.exceptions import DomainError, PrecisionError, StructuralError


class TruncatedSeries(object):
    __slots__ = ('p', 'coefficients', 'precision')

    def __init__(self, p, coefficients, precision):
        if precision < 0:
            raise PrecisionError('negative precision %d' % precision)
        coefficients = [int(c) % p for c in coefficients[:precision]]
        coefficients += [0] * (precision - len(coefficients))
        self.p = p
        self.coefficients = coefficients
        self.precision = precision

    @classmethod
    def zero(cls, p, precision):
        return cls(p, [], precision)

    @classmethod
    def one(cls, p, precision):
        return cls(p, [1], precision)

    @classmethod
    def monomial(cls, p, k, precision, c=1):
        """c t^k"""
        if k >= precision:
            return cls.zero(p, precision)
        return cls(p, [0] * k + [c], precision)

    @classmethod
    def random_unit(cls, p, precision, rng, constant=1):
        """constant + t * (random series), coefficients drawn from `rng`"""
        tail = rng.integers(0, p, size=max(precision - 1, 0))
        return cls(p, [constant] + [int(c) for c in tail], precision)

    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            return False
        if other.p != self.p:
            raise StructuralError('series over F_%d and F_%d' % (self.p, other.p))
        return True

    def valuation(self):
        """Index of the first nonzero coefficient, or None if the series is zero to
        its precision (the valuation is then only known to be >= precision)"""
        for i, c in enumerate(self.coefficients):
            if c:
                return i
        return None

    def is_unit(self):
        return self.precision > 0 and self.coefficients[0] != 0

    def coefficient(self, i):
        if i >= self.precision:
            raise PrecisionError('coefficient %d is beyond the precision %d' % (i, self.precision))
        return self.coefficients[i]

    def truncate(self, precision):
        return TruncatedSeries(self.p, self.coefficients, min(precision, self.precision))

    def __add__(self, other):
        if not self._check(other):
            if isinstance(other, int):
                other = TruncatedSeries(self.p, [other], self.precision)
            else:
                return NotImplemented
        n = min(self.precision, other.precision)
        a, b = self.coefficients, other.coefficients
        return TruncatedSeries(self.p, [a[i] + b[i] for i in range(n)], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.p, [-c for c in self.coefficients], self.precision)

    def __sub__(self, other):
        if not self._check(other):
            if isinstance(other, int):
                other = TruncatedSeries(self.p, [other], self.precision)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        return TruncatedSeries(self.p, [c * a for a in self.coefficients], self.precision)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not self._check(other):
            return NotImplemented
        n = min(self.precision, other.precision)
        p = self.p
        a, b = self.coefficients, other.coefficients
        result = [0] * n
        for i in range(n):
            ai = a[i]
            if not ai:
                continue
            for j in range(n - i):
                if b[j]:
                    result[i + j] += ai * b[j]
        return TruncatedSeries(p, [c % p for c in result], n)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncatedSeries.one(self.p, self.precision)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        """Inverse of a unit, by the recursion b_n = -b_0 sum_{i=1}^n a_i b_(n-i)"""
        if not self.is_unit():
            raise DomainError('only units of F_p[[t]] can be inverted')
        p = self.p
        a = self.coefficients
        b0 = pow(a[0], p - 2, p)
        b = [b0]
        for n in range(1, self.precision):
            s = sum(a[i] * b[n - i] for i in range(1, n + 1))
            b.append(-b0 * s % p)
        return TruncatedSeries(p, b, self.precision)

    def __truediv__(self, other):
        """Exact division f / g in F_p[[t]]; requires v(f) >= v(g)"""
        if isinstance(other, int):
            return self.scale(pow(other, self.p - 2, self.p))
        v = other.valuation()
        if v is None:
            raise PrecisionError('division by a series that is zero to its precision')
        return self.shift(-v) * other.shift(-v).inverse()

    def nth_root(self, n):
        """The n-th root of a unit by Newton iteration, for p not dividing n. The
        constant term of the root is an n-th root of the constant term."""
        p = self.p
        if n % p == 0:
            raise DomainError('Newton iteration needs p = %d not to divide n = %d' % (p, n))
        if not self.is_unit():
            raise DomainError('only units have n-th roots computed here')
        c = self.coefficients[0]
        if c == 1:
            r = 1
        else:
            r = nthroot_mod(c, n, p)
            if r is None:
                raise DomainError('%d has no %d-th root in F_%d' % (c, n, p))
        w = TruncatedSeries(p, [r], self.precision)
        known = 1
        inv_n = pow(n, p - 2, p)
        while known < self.precision:
            # w <- w - (w^n - f) / (n w^(n-1)), doubling the correct coefficients
            correction = (w**n - self) * (w ** (n - 1)).inverse().scale(inv_n)
            w = w - correction
            known *= 2
        return w

    def inflate(self, k):
        """Substitute t -> t^k"""
        coefficients = [0] * (self.precision * k)
        for i, c in enumerate(self.coefficients):
            coefficients[i * k] = c
        return TruncatedSeries(self.p, coefficients, self.precision * k)

    def trace_deflate(self, k):
        """Trace of F_p[[t]] over F_p[[T]] with T = t^k (p not dividing k):
        Tr(t^a) = k T^(a/k) when k divides a, else 0"""
        if k % self.p == 0:
            raise DomainError('the trace formula needs p not to divide k = %d' % k)
        precision = -(-self.precision // k)
        coefficients = [k * self.coefficients[j * k] for j in range(precision)]
        return TruncatedSeries(self.p, coefficients, precision)

    def shift(self, k):
        """Multiply by t^k; for negative k divide by t^-k, which needs the first -k
        coefficients to vanish"""
        if k >= 0:
            return TruncatedSeries(self.p, [0] * k + self.coefficients, self.precision + k)
        k = -k
        if k > self.precision:
            raise PrecisionError('cannot divide by t^%d at precision %d' % (k, self.precision))
        if any(self.coefficients[:k]):
            raise DomainError('series is not divisible by t^%d' % k)
        return TruncatedSeries(self.p, self.coefficients[k:], self.precision - k)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.precision, other.precision)
        return self.p == other.p and self.coefficients[:n] == other.coefficients[:n]

    __hash__ = None

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append('t' if i == 1 else 't^%d' % i)
            else:
                terms.append('%d*t' % c if i == 1 else '%d*t^%d' % (c, i))
        terms.append('O(t^%d)' % self.precision)
        return ' + '.join(terms)

    def __repr__(self):
        return 'TruncatedSeries(F_%d, %s)' % (self.p, self)


@dataclass(frozen=True)
class DeterminantResult:
    valuation: int
    value: TruncatedSeries


def series_determinant(matrix):
    """Determinant of a square matrix over F_p[[T]] by elimination with full pivoting
    on valuation. Every pivot valuation is certified: a pivot of valuation v is only
    used when every entry that is zero to its precision has precision > v."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise StructuralError('determinant of a non-square matrix')
    if n == 0:
        raise StructuralError('determinant of an empty matrix')
    rows = [list(row) for row in matrix]
    p = rows[0][0].p
    working = max(entry.precision for row in rows for entry in row)
    sign = 1
    valuation = 0
    value = TruncatedSeries.one(p, working)
    for k in range(n):
        best = None
        uncertain = None
        for i in range(k, n):
            for j in range(k, n):
                entry = rows[i][j]
                v = entry.valuation()
                if v is None:
                    if uncertain is None or entry.precision < uncertain:
                        uncertain = entry.precision
                elif best is None or v < best[0]:
                    best = (v, i, j)
        if best is None:
            msg = """determinant vanishes to the working precision; the remaining
                minor of size %d is zero modulo T^%d"""
            raise PrecisionError(dedent(msg) % (n - k, uncertain), 2 * working)
        v, i, j = best
        if uncertain is not None and v >= uncertain:
            msg = """cannot certify a pivot of valuation %d: an entry is only known to
                vanish modulo T^%d"""
            raise PrecisionError(dedent(msg) % (v, uncertain), 2 * working)
        if i != k:
            rows[i], rows[k] = rows[k], rows[i]
            sign = -sign
        if j != k:
            for row in rows:
                row[j], row[k] = row[k], row[j]
            sign = -sign
        pivot = rows[k][k]
        unit = pivot.shift(-v).inverse()
        for i in range(k + 1, n):
            factor = rows[i][k].shift(-v) * unit
            for j in range(k, n):
                rows[i][j] = rows[i][j] - factor * rows[k][j]
        valuation += v
        value = value * pivot
    return DeterminantResult(valuation, value.scale(sign))


def det_mod_p(matrix, p):
    """Determinant over F_p of an integer matrix"""
    A = np.array(matrix, dtype=np.int64) % p
    n = A.shape[0]
    det = 1
    for col in range(n):
        nonzero = np.nonzero(A[col:, col])[0]
        if nonzero.size == 0:
            return 0
        pivot = col + nonzero[0]
        if pivot != col:
            A[[col, pivot]] = A[[pivot, col]]
            det = -det
        det = det * int(A[col, col]) % p
        inv = pow(int(A[col, col]), p - 2, p)
        for row in range(col + 1, n):
            if A[row, col]:
                factor = int(A[row, col]) * inv % p
                A[row] = (A[row] - factor * A[col]) % p
    return det % p
