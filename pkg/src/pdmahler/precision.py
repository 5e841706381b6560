"""Serialisation of mpmath work across threads.

mpmath keeps its working precision in one process-wide context, so two threads
inside ``workdps`` blocks would change each other's precision mid-computation.
Every public entry point that sets the precision holds this reentrant lock.
"""

from __future__ import annotations

import functools
import threading

MP_LOCK = threading.RLock()


def serialized(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        with MP_LOCK:
            return fn(*args, **kwargs)
    return wrapper
