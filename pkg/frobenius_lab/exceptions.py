#####################################################################
#                                                                   #
# exceptions.py                                                     #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
"""Exception hierarchy shared by all frobenius_lab modules. The command line maps
each class to its own exit code, see :data:`EXIT_CODES`."""


class FrobeniusLabError(Exception):
    """Base class of all errors raised deliberately by frobenius_lab"""

    kind = 'error'


class ParseError(FrobeniusLabError, ValueError):
    """Malformed expression or job text. `position` is the 0-based character offset
    at which parsing failed, or None if it is not known."""

    kind = 'parse'

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = '%s (at position %d)' % (message, position)
        super().__init__(message)


class DomainError(FrobeniusLabError, ValueError):
    """A mathematical precondition of an operation does not hold"""

    kind = 'precondition'


class StructuralError(FrobeniusLabError, TypeError):
    """Objects from different rings, or monomials of different lengths, combined"""

    kind = 'precondition'


class ValidationError(FrobeniusLabError, ValueError):
    """Inconsistent input data, for example semigroup data of a curve"""

    kind = 'precondition'


class BudgetError(FrobeniusLabError, RuntimeError):
    """A computation exceeded its configured pair, degree or time budget"""

    kind = 'budget'


class CapacityError(FrobeniusLabError, OverflowError):
    """An exponent or Frobenius power exceeds the representable range"""

    kind = 'capacity'


class PrecisionError(FrobeniusLabError, ArithmeticError):
    """Truncated power series arithmetic cannot certify a valuation.
    `required_precision` is a precision that would suffice, if known."""

    kind = 'capacity'

    def __init__(self, message, required_precision=None):
        self.required_precision = required_precision
        super().__init__(message)


class FieldDivisionError(FrobeniusLabError, ZeroDivisionError):
    """Inversion of zero in a prime field"""

    kind = 'precondition'


EXIT_CODES = {
    'parse': 3,
    'precondition': 4,
    'budget': 5,
    'capacity': 6,
}
