#####################################################################
#                                                                   #
# properties.py                                                     #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
"""Serialisation of results. Every number is an exact rational written as
{"num": "<int>", "den": "<int>"}; keys are sorted so that equal payloads give equal
bytes and equal content hashes."""

import hashlib
import json
from collections.abc import Iterable, Mapping
from fractions import Fraction

import numpy as np

JSON_IDENTIFIER = 'Content-Type: application/json '


def _check_dicts(o):
    if isinstance(o, Mapping):
        if not all(isinstance(k, str) for k in o.keys()):
            raise TypeError("Cannot JSON encode dictionary with non-string keys")
        for item in o.values():
            _check_dicts(item)
    elif isinstance(o, Iterable) and not isinstance(o, (str, bytes)):
        for item in o:
            _check_dicts(item)


def encode_numbers(o):
    """Replace every integer and Fraction (not bool) by its {"num", "den"} form"""
    if isinstance(o, Mapping):
        return {key: encode_numbers(value) for key, value in o.items()}
    elif isinstance(o, (bool, str)) or o is None:
        return o
    elif isinstance(o, (int, np.integer, Fraction)):
        value = Fraction(int(o)) if not isinstance(o, Fraction) else o
        return {'num': str(value.numerator), 'den': str(value.denominator)}
    elif isinstance(o, (float, np.floating)):
        raise TypeError('refusing to serialise the float %r: results must be exact' % o)
    elif isinstance(o, Iterable) and not isinstance(o, bytes):
        return [encode_numbers(value) for value in o]
    raise TypeError('cannot serialise %r of type %s' % (o, type(o).__name__))


def _is_number(o):
    return (
        isinstance(o, Mapping)
        and set(o.keys()) == {'num', 'den'}
        and all(isinstance(v, str) for v in o.values())
    )


def decode_numbers(o):
    """Inverse of encode_numbers: integers come back as int, others as Fraction"""
    if _is_number(o):
        value = Fraction(int(o['num']), int(o['den']))
        return value.numerator if value.denominator == 1 else value
    elif isinstance(o, Mapping):
        return {key: decode_numbers(value) for key, value in o.items()}
    elif isinstance(o, list):
        return [decode_numbers(value) for value in o]
    return o


def serialise(value, indent=None):
    _check_dicts(value)
    separators = (',', ': ') if indent is not None else (',', ':')
    return json.dumps(
        encode_numbers(value), sort_keys=True, indent=indent, separators=separators
    )


def deserialise(text):
    return decode_numbers(json.loads(text))


def content_hash(payload):
    """SHA-256 hex digest of the compact serialisation of `payload`"""
    return hashlib.sha256(serialise(payload).encode('utf8')).hexdigest()


def is_json(value):
    if isinstance(value, bytes):
        return value[: len(JSON_IDENTIFIER)] == JSON_IDENTIFIER.encode('utf8')
    elif isinstance(value, str):
        return value.startswith(JSON_IDENTIFIER)
    return False


def set_attributes(group, attributes):
    """Add attributes to a HDF5 group, serialising them to JSON if they do not map to
    native HDF5 datatypes. Numbers always go through JSON so they stay exact."""
    for key, val in attributes.items():
        try:
            # h5py would store ints natively, and has no equivalent for None:
            if val is None or not isinstance(val, (str, bool)):
                raise TypeError('has no native HDF5 equivalent')
            group.attrs[key] = val
        except TypeError as e:
            if 'has no native HDF5 equivalent' in str(e):
                group.attrs[key] = JSON_IDENTIFIER + serialise(val)
            else:
                raise


def _decode_attribute(value):
    if isinstance(value, bytes):
        value = value.decode('utf8')
    if is_json(value):
        return deserialise(value[len(JSON_IDENTIFIER):])
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def get_attributes(group):
    """Return attributes of a HDF5 group as a dict, deserialising any that have been
    encoded as JSON"""
    return {k: _decode_attribute(v) for k, v in group.attrs.items()}


def get_attribute(group, name):
    return _decode_attribute(group.attrs[name])


def save_run_record_h5(filename, record):
    """Archive a run record (the dict written as JSON) in an HDF5 file, one group per
    top level key"""
    import h5py

    with h5py.File(filename, 'w') as f:
        for key, value in record.items():
            if isinstance(value, Mapping):
                set_attributes(f.create_group(key), value)
            else:
                set_attributes(f, {key: value})


def load_run_record_h5(filename):
    import h5py

    with h5py.File(filename, 'r') as f:
        record = get_attributes(f)
        for key, group in f.items():
            record[key] = get_attributes(group)
    return record
