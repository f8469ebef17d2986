"""Elimination kernels with a compiled core and a pure-Python fallback.

The compiled extension is used when it was built; setting the environment
variable ``HOMLIE_PURE_PYTHON=1`` forces the fallback.
"""
import os
from contextlib import contextmanager

from . import _pykernels

if os.environ.get("HOMLIE_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = _impl.BACKEND
rref_int = _impl.rref_int
IntSpan = _impl.IntSpan
ModPSpan = _impl.ModPSpan


def available_backends():
    """Return ``{name: module}`` for every importable backend."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out


@contextmanager
def use_backend(name):
    """Temporarily route every kernel call through backend ``name``."""
    global BACKEND, rref_int, IntSpan, ModPSpan
    mod = available_backends()[name]
    saved = (BACKEND, rref_int, IntSpan, ModPSpan)
    BACKEND, rref_int, IntSpan, ModPSpan = mod.BACKEND, mod.rref_int, mod.IntSpan, mod.ModPSpan
    try:
        yield mod
    finally:
        BACKEND, rref_int, IntSpan, ModPSpan = saved
