"""Size caps and worker counts, overridable through the environment.

``XORGAMES_CAP_BITS`` sets the enumeration cap (total sign bits, default 30).
``XORGAMES_THREADS`` sets the worker count for enumeration chunks and suite
trials (default 1).
"""

import os

DEFAULT_CAP_BITS = 30
# log2 of the largest dense tensor / state vector we are willing to allocate
DEFAULT_CAP_ENTRIES_LOG2 = 24


def cap_bits():
    return int(os.environ.get("XORGAMES_CAP_BITS", DEFAULT_CAP_BITS))


def cap_entries_log2():
    return int(os.environ.get("XORGAMES_CAP_ENTRIES_LOG2", DEFAULT_CAP_ENTRIES_LOG2))


def threads():
    return max(1, int(os.environ.get("XORGAMES_THREADS", 1)))
