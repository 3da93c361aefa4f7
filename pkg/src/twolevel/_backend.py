"""numba switch for the brute-force kernels.

Set ``TWOLEVEL_NUMBA=0`` to run every kernel as plain Python over numpy
arrays.  With numba enabled the pure path stays reachable through the
dispatcher's ``py_func`` attribute, which is what the benchmark compares.
"""
import os

_flag = os.environ.get("TWOLEVEL_NUMBA", "1").strip().lower()
USE_NUMBA = _flag not in ("0", "false", "no", "off")

try:
    if USE_NUMBA:
        import numba
        if "NUMBA_THREADING_LAYER" not in os.environ:
            # the bundled TBB is often too old; workqueue always loads
            numba.config.THREADING_LAYER = "workqueue"
    else:
        numba = None
except ImportError:  # pragma: no cover
    numba = None
    USE_NUMBA = False


def njit(*args, **kwargs):
    if numba is not None:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


if numba is not None:
    prange = numba.prange
else:
    prange = range


def set_threads(n):
    """Cap numba worker threads; a no-op on the pure path."""
    if numba is None or not n:
        return
    numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))


def pure(kernel):
    """The uncompiled body of a kernel."""
    return getattr(kernel, "py_func", kernel)
