"""Optional numba acceleration for the numeric kernels.

Every hot kernel in this package is written in nopython-compatible
Python.  When numba is importable and ``DRIFTINV_DISABLE_JIT`` is not
set, kernels are compiled with ``@njit(cache=True)``; otherwise the
plain Python definitions run as-is on numpy arrays.  Both paths execute
the same statements in the same order, so they produce identical
results (see ``benchmarks/bench_kernels.py``).
"""

import os

ENV_FLAG = "DRIFTINV_DISABLE_JIT"


def jit_disabled_by_env() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() in ("1", "true", "yes", "on")


try:
    if jit_disabled_by_env():
        raise ImportError("jit disabled via " + ENV_FLAG)
    from numba import njit as _njit

    JIT_ENABLED = True
except ImportError:
    _njit = None
    JIT_ENABLED = False


def maybe_njit(fn):
    """Compile ``fn`` with numba when enabled, else return it unchanged."""
    if JIT_ENABLED:
        return _njit(cache=True)(fn)
    return fn
