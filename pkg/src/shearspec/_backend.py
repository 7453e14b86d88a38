"""Kernel backend selection.

Hot loops (series sums, ODE Taylor stepping, Sturm counts) come in two
flavours: scalar loops compiled with numba, and vectorised pure-numpy
versions.  ``SHEARSPEC_BACKEND=numpy`` forces the numpy path; the default
is numba when it can be imported.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
BACKEND = os.environ.get("SHEARSPEC_BACKEND", "numba").strip().lower()
if BACKEND not in ("numba", "numpy"):
    raise ImportError(f"SHEARSPEC_BACKEND must be 'numba' or 'numpy', got {BACKEND!r}")
USE_NUMBA = HAVE_NUMBA and BACKEND == "numba"


def njit(fn):
    """Compile ``fn`` with numba when available, otherwise return it unchanged."""
    if HAVE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


def select(nb_impl, np_impl):
    return nb_impl if USE_NUMBA else np_impl
