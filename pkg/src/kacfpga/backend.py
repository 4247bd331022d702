"""Kernel backend selection.

The compiled ``_fastcore`` extension is used when it imports; otherwise
the pure-Python ``_pycore`` takes over. ``KACFPGA_BACKEND=python`` (or
``native``) forces a choice at import time.
"""

import contextlib
import os

from kacfpga import _pycore

try:
    from kacfpga import _fastcore
except ImportError:  # extension not built
    _fastcore = None

BACKENDS = {"python": _pycore}
if _fastcore is not None:
    BACKENDS["native"] = _fastcore


def _initial():
    wanted = os.environ.get("KACFPGA_BACKEND", "").strip().lower()
    if wanted:
        if wanted not in BACKENDS:
            raise ImportError(f"backend {wanted!r} unavailable; have {sorted(BACKENDS)}")
        return BACKENDS[wanted]
    return BACKENDS.get("native", _pycore)


_active = _initial()


def active():
    return _active


def name():
    return _active.NAME


def available():
    return sorted(BACKENDS)


def select(backend_name):
    global _active
    if backend_name not in BACKENDS:
        raise ValueError(f"unknown backend {backend_name!r}; have {available()}")
    _active = BACKENDS[backend_name]


@contextlib.contextmanager
def using(backend_name):
    previous = _active.NAME
    select(backend_name)
    try:
        yield BACKENDS[backend_name]
    finally:
        select(previous)
