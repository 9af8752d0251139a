#####################################################################
#                                                                   #
# pool.py                                                           #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
from concurrent.futures import ThreadPoolExecutor


def ordered_map(func, items, threads=1, stop_on=()):
    """Apply func to each item, on a thread pool if threads > 1, and return the results
    in input order. If an item raises one of the exception types in `stop_on`, return
    (results before that item, exception); otherwise return (results, None)."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        results = []
        for item in items:
            try:
                results.append(func(item))
            except stop_on as e:
                return results, e
        return results, None
    with ThreadPoolExecutor(max_workers=threads) as executor:
        futures = [executor.submit(func, item) for item in items]
        results = []
        for future in futures:
            try:
                results.append(future.result())
            except stop_on as e:
                for later in futures:
                    later.cancel()
                return results, e
    return results, None
