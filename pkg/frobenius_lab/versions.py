#####################################################################
#                                                                   #
# versions.py                                                       #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
import packaging.version

# Version of the JSON result schema written in every run record. Readers accept any
# 1.x record; a new major version means an incompatible layout.
SCHEMA_VERSION = '1.0'
SCHEMA_AT_LEAST = '1.0'
SCHEMA_LESS_THAN = '2.0'


class VersionException(RuntimeError):
    pass


def check_version(name, version, at_least, less_than):
    """Checks that `version` is within specified bounds.

    Args:
        name (str): What is being checked, for the error message.
        version (str): The version found.
        at_least (str): The minimum acceptable version.
        less_than (str): The minimum unacceptable version. Usually this would be the
            next major version.

    Raises:
        :exc:`VersionException`: if the version is missing, unparseable or out of
            bounds.
    """
    if version is None:
        raise VersionException('{} has no version information'.format(name))
    try:
        at_least_version, less_than_version, found_version = [
            packaging.version.parse(v) for v in [at_least, less_than, version]
        ]
    except packaging.version.InvalidVersion as e:
        raise VersionException('{}: {}'.format(name, e)) from None

    if not at_least_version <= found_version < less_than_version:
        msg = (
            '{name} {version} found. '
            + '{at_least} <= {name} < {less_than} required.'
        )
        raise VersionException(msg.format(**locals()))


def check_schema_version(record):
    """Check that a run record (a dict, as loaded from JSON) has a schema version this
    version of frobenius-lab can read"""
    check_version(
        'result schema',
        record.get('schema_version'),
        SCHEMA_AT_LEAST,
        SCHEMA_LESS_THAN,
    )
