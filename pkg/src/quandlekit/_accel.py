"""Numba switch.

Set ``QUANDLEKIT_NO_NUMBA=1`` to force the pure-numpy kernels even when numba
is importable.
"""
import os

_DISABLED = os.environ.get("QUANDLEKIT_NO_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(fn):
            return fn

        return wrap


USE_NUMBA = HAVE_NUMBA
