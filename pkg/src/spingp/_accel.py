"""Numba switch.

Set ``SPINGP_NUMBA=0`` to run the numpy fallbacks instead of the compiled
kernels. The flag is read once at import time.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and os.environ.get("SPINGP_NUMBA", "1").strip().lower() not in {
    "0", "false", "no", "off"}


def njit(func):
    """Compile ``func`` in nopython mode when numba is importable.

    Returns the plain function otherwise, so the loop version still runs
    (slowly) as ordinary Python.
    """
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True, nogil=True)(func)
