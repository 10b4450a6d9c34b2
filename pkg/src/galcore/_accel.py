"""Backend selection for the hot kernels.

Set ``GALCORE_NUMBA=0`` before import to force the pure-numpy path. If numba
cannot be imported the numpy path is used regardless.
"""

import os

_requested = os.environ.get("GALCORE_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = _requested and HAVE_NUMBA
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(*args, **kws):
    """``numba.njit`` with on-disk caching; identity decorator without numba."""
    if not HAVE_NUMBA:
        if args and callable(args[0]):
            return args[0]
        return lambda fn: fn
    kws.setdefault("cache", True)
    kws.setdefault("nogil", True)
    return numba.njit(*args, **kws)
