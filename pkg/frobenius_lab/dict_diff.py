#####################################################################
#                                                                   #
# dict_diff.py                                                      #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
"""Differences between two run record payloads, used by `frobenius-lab --compare`"""

import numpy as np

MISSING = '-'


def dict_diff(dict1, dict2, prefix=''):
    """Return {key: [value1, value2]} for every key whose values differ. A key present
    in only one dictionary has MISSING on the other side. Nested dictionaries are
    compared key by key, and their keys are reported as 'outer/inner'."""
    keys1, keys2 = list(dict1), list(dict2)
    shared = np.intersect1d(keys1, keys2).tolist() if keys1 and keys2 else []
    diff = {}
    for key in shared:
        old, new = dict1[key], dict2[key]
        path = prefix + key
        if isinstance(old, dict) and isinstance(new, dict):
            diff.update(dict_diff(old, new, path + '/'))
        elif old != new:
            diff[path] = [old, new]
    diff.update({prefix + k: [dict1[k], MISSING] for k in keys1 if k not in shared})
    diff.update({prefix + k: [MISSING, dict2[k]] for k in keys2 if k not in shared})
    return diff
