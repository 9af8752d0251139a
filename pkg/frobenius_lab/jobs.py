#####################################################################
#                                                                   #
# jobs.py                                                           #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
"""The text job format.

A job is a list of ``key = value`` statements separated by ``;`` or newlines, with
``#`` starting a comment that runs to the end of the line::

    command = hk
    p = 3; vars = x, y; ideal = x*y
    emax = 3

Curves repeat the ``branch`` key, one per branch, with an optional cross valuation
after ``@``. Lists of points and witnesses are separated by ``|``."""

import re
from dataclasses import dataclass, fields, replace

from frobenius_lab.exceptions import ParseError
from frobenius_lab.ideals import IdealBasis
from frobenius_lab.local_ring import LocalRingPresentation
from frobenius_lab.polynomials import make_ring, parse_polynomial_list, split_top_level
from frobenius_lab.spec_scan import Subvariety, Witness
from frobenius_lab.tame_curves import Branch, BranchCurve, NumericalSemigroup

COMMANDS = ('hk', 'fsig', 'fedder', 'tame', 'scan', 'verify-bounds')

_NAME_RE = re.compile(r'[A-Za-z_][A-Za-z0-9_]*$')


@dataclass(frozen=True)
class JobSpec:
    command: str
    name: str = None
    p: int = None
    variables: tuple = ()
    ideal: tuple = ()
    point: tuple = None
    e_max: int = None
    e_cap: int = None
    c: str = None
    precision: int = None
    budget_pairs: int = None
    branches: tuple = ()
    points: tuple = ()
    subvarieties: tuple = ()
    pairs: tuple = ()
    socle_ideal: tuple = ()
    socle: str = None
    m: int = None
    Delta: int = None
    e0: int = None
    b: int = None
    nilpotent: tuple = ()

    def with_overrides(self, **overrides):
        """A copy with the given fields replaced, skipping overrides that are None"""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


# Text key for each field, in the order format_job writes them:
KEYS = {
    'command': 'command',
    'name': 'name',
    'p': 'p',
    'variables': 'vars',
    'ideal': 'ideal',
    'point': 'point',
    'e_max': 'emax',
    'e_cap': 'ecap',
    'c': 'c',
    'precision': 'precision',
    'budget_pairs': 'budget_pairs',
    'branches': 'branch',
    'points': 'points',
    'subvarieties': 'subvariety',
    'pairs': 'pairs',
    'socle_ideal': 'socle_ideal',
    'socle': 'socle',
    'm': 'm',
    'Delta': 'Delta',
    'e0': 'e0',
    'b': 'b',
    'nilpotent': 'nilpotent',
}
FIELDS = {key: name for name, key in KEYS.items()}
INTEGER_FIELDS = ('p', 'e_max', 'e_cap', 'precision', 'budget_pairs', 'm', 'Delta', 'e0', 'b')
LIST_FIELDS = ('ideal', 'socle_ideal', 'nilpotent')


def _statements(text):
    """Yield (key, value, key_offset, value_offset) for every statement"""
    offset = 0
    for line in text.splitlines(keepends=True):
        content = line.split('#', 1)[0]
        start = 0
        for piece in content.split(';'):
            piece_offset = offset + start
            start += len(piece) + 1
            if not piece.strip():
                continue
            if '=' not in piece:
                position = piece_offset + len(piece) - len(piece.lstrip())
                raise ParseError("expected 'key = value', got %r" % piece.strip(), position)
            key, value = piece.split('=', 1)
            key_offset = piece_offset + len(key) - len(key.lstrip())
            value_offset = piece_offset + len(key) + 1
            value_offset += len(value) - len(value.lstrip())
            yield key.strip(), value.strip(), key_offset, value_offset
        offset += len(line)


def _int(value, position):
    try:
        return int(value)
    except ValueError:
        raise ParseError('expected an integer, got %r' % value, position) from None


def _int_tuple(value, position):
    result = []
    for piece, offset in split_top_level(value):
        result.append(_int(piece.strip(), position + offset))
    return tuple(result)


def _string_tuple(value):
    if not value.strip():
        return ()
    return tuple(piece.strip() for piece, _ in split_top_level(value))


def _branch(value, position):
    generators, _, beta = value.partition('@')
    return (_int_tuple(generators, position), _int(beta.strip(), position) if beta else 0)


def _witness(value, position):
    point, _, parameters = value.partition(':')
    return (_int_tuple(point, position), _string_tuple(parameters))


def _bars(value):
    """Split on '|', returning (piece, offset) pairs"""
    pieces = []
    start = 0
    for piece in value.split('|'):
        pieces.append((piece, start))
        start += len(piece) + 1
    return pieces


def parse_job(text):
    """Parse job text into a JobSpec. Errors carry the character offset in `text`."""
    values = {}
    raw = {}
    positions = {}
    branches = []
    subvarieties = []
    for key, value, key_offset, value_offset in _statements(text):
        if key == 'witnesses':
            if not subvarieties:
                raise ParseError("'witnesses' before any 'subvariety'", key_offset)
            prime, witnesses = subvarieties[-1]
            for piece, offset in _bars(value):
                witnesses.append(_witness(piece, value_offset + offset))
            continue
        if key not in FIELDS:
            raise ParseError('unknown key %r' % key, key_offset)
        field = FIELDS[key]
        if field == 'branches':
            branches.append(_branch(value, value_offset))
            positions.setdefault(field, value_offset)
            continue
        if field == 'subvarieties':
            subvarieties.append((_string_tuple(value), []))
            positions.setdefault(field, value_offset)
            continue
        if field in values:
            raise ParseError('duplicate key %r' % key, key_offset)
        positions[field] = value_offset
        if field in INTEGER_FIELDS:
            values[field] = _int(value, value_offset)
        elif field == 'variables':
            names = _string_tuple(value)
            for name in names:
                if not _NAME_RE.match(name):
                    raise ParseError('invalid variable name %r' % name, value_offset)
            duplicates = sorted(set(name for name in names if names.count(name) > 1))
            if duplicates:
                msg = 'duplicate variable name %r' % duplicates[0]
                raise ParseError(msg, value_offset)
            values[field] = names
        elif field in LIST_FIELDS:
            raw[field] = value
            values[field] = _string_tuple(value)
        elif field == 'point':
            values[field] = _int_tuple(value, value_offset)
        elif field == 'points':
            values[field] = tuple(
                _int_tuple(piece, value_offset + offset) for piece, offset in _bars(value)
            )
        elif field == 'pairs':
            pairs = []
            for piece, offset in _bars(value):
                pair = _int_tuple(piece, value_offset + offset)
                if len(pair) != 2:
                    msg = 'a pair is two point indices, got %r' % piece.strip()
                    raise ParseError(msg, value_offset + offset)
                pairs.append(pair)
            values[field] = tuple(pairs)
        else:
            if field in ('c', 'socle'):
                raw[field] = value
            values[field] = value
    if 'command' not in values:
        raise ParseError("the job has no 'command'", len(text))
    if values['command'] not in COMMANDS:
        msg = 'unknown command %r, expected one of %s'
        raise ParseError(msg % (values['command'], ', '.join(COMMANDS)), positions['command'])
    values['branches'] = tuple(branches)
    values['subvarieties'] = tuple((prime, tuple(w)) for prime, w in subvarieties)
    job = JobSpec(**values)
    _check_expressions(job, raw, positions)
    return job


def _check_expressions(job, raw, positions):
    """Parse every expression now, so that errors point into the job text"""
    if job.p is None or not job.variables:
        return
    ring = make_ring(job.p, job.variables)
    for field, text in raw.items():
        try:
            parse_polynomial_list(text, ring)
        except ParseError as e:
            message = str(e).rsplit(' (at position', 1)[0]
            position = None if e.position is None else positions[field] + e.position
            raise ParseError(message, position) from None


def _format_value(field, value):
    if field in ('variables',) + LIST_FIELDS:
        return ', '.join(value)
    if field == 'point':
        return ','.join(str(a) for a in value)
    if field == 'points':
        return ' | '.join(','.join(str(a) for a in point) for point in value)
    if field == 'pairs':
        return ' | '.join('%d,%d' % pair for pair in value)
    return str(value)


def format_job(job):
    """Job text that parses back to `job`"""
    lines = []
    for f in fields(JobSpec):
        value = getattr(job, f.name)
        key = KEYS[f.name]
        if value is None or value == ():
            continue
        if f.name == 'branches':
            for generators, beta in value:
                text = ','.join(str(g) for g in generators)
                lines.append('%s = %s' % (key, text + (' @ %d' % beta if beta else '')))
        elif f.name == 'subvarieties':
            for prime, witnesses in value:
                lines.append('%s = %s' % (key, ', '.join(prime)))
                if witnesses:
                    texts = []
                    for point, parameters in witnesses:
                        text = ','.join(str(a) for a in point)
                        if parameters:
                            text += ' : ' + ', '.join(parameters)
                        texts.append(text)
                    lines.append('witnesses = %s' % ' | '.join(texts))
        else:
            lines.append('%s = %s' % (key, _format_value(f.name, value)))
    return '\n'.join(lines) + '\n'


def _require(job, *names):
    missing = [KEYS[name] for name in names if getattr(job, name) in (None, ())]
    if missing:
        msg = 'the %s job needs the key(s) %s'
        raise ParseError(msg % (job.command, ', '.join(missing)))


def build_ring(job):
    _require(job, 'p', 'variables')
    return make_ring(job.p, job.variables)


def build_presentation(job):
    _require(job, 'p', 'variables', 'ideal')
    ring = build_ring(job)
    return LocalRingPresentation(IdealBasis.parse(ring, ', '.join(job.ideal)), job.point, job.name)


def build_ideal(job, field):
    ring = build_ring(job)
    return IdealBasis.parse(ring, ', '.join(getattr(job, field)))


def build_curve(job):
    _require(job, 'p', 'branches')
    branches = [
        Branch(NumericalSemigroup(generators), beta) for generators, beta in job.branches
    ]
    return BranchCurve(job.p, branches, job.name)


def build_subvarieties(job):
    ring = build_ring(job)
    result = []
    for prime, witnesses in job.subvarieties:
        result.append(
            Subvariety(
                IdealBasis.parse(ring, ', '.join(prime)),
                [Witness(point, parameters) for point, parameters in witnesses],
                ', '.join(prime),
            )
        )
    return result
