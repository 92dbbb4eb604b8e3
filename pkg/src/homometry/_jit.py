"""Optional numba acceleration.

The integer search kernels run under numba's @njit by default.  Setting the
environment variable HOMOMETRY_DISABLE_JIT=1 selects the pure fallback path
instead (same results, useful on machines without numba and for benchmarking
the two paths against each other).
"""

import os

JIT_DISABLED = os.environ.get("HOMOMETRY_DISABLE_JIT", "").lower() in ("1", "true", "yes")

if not JIT_DISABLED:
    try:
        from numba import njit

        JIT_AVAILABLE = True
    except ImportError:  # pragma: no cover - numba is an optional extra
        JIT_AVAILABLE = False
else:
    JIT_AVAILABLE = False

if not JIT_AVAILABLE:

    def njit(*args, **kwargs):  # noqa: D103 - identity decorator stand-in
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap
