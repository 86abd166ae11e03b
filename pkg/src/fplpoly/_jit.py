"""Optional numba acceleration.

Kernels are written against plain numpy arrays so the same source runs
either compiled or interpreted.  Set ``FPLPOLY_PURE=1`` to force the
interpreted path (also used when numba is not importable).
"""

import os

PURE = os.environ.get("FPLPOLY_PURE", "0").lower() in ("1", "true", "yes")

try:
    if PURE:
        raise ImportError
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False
    _njit = None


def njit(*args, **kwargs):
    """Drop-in for ``numba.njit`` that degrades to the identity."""
    if HAVE_NUMBA:
        return _njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


def backend() -> str:
    return "numba" if HAVE_NUMBA else "python"
