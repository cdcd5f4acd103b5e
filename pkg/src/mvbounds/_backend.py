"""Kernel backend selection.

The vertex-enumeration kernels exist twice: a numba ``@njit`` version (the
default when numba imports cleanly) and a vectorized pure-numpy fallback.
Setting the environment variable ``MVBOUNDS_DISABLE_NUMBA`` to ``1``/``true``
forces the numpy path; the flag is re-read on every call so tests and
benchmarks can flip it at runtime.
"""

from __future__ import annotations

import os
from functools import lru_cache

ENV_DISABLE_NUMBA = "MVBOUNDS_DISABLE_NUMBA"

_TRUTHY = {"1", "true", "yes", "on"}


@lru_cache(maxsize=1)
def _numba_import_ok() -> bool:
    try:
        from . import _kernels_numba  # noqa: F401
    except Exception:
        return False
    return True


def numba_enabled() -> bool:
    if os.environ.get(ENV_DISABLE_NUMBA, "").strip().lower() in _TRUTHY:
        return False
    return _numba_import_ok()


def active_backend() -> str:
    """Name of the kernel backend the next oracle call will use."""
    return "numba" if numba_enabled() else "numpy"
