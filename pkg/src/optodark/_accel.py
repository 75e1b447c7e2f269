"""Backend selection for the hot kernels.

Set ``OPTODARK_BACKEND=numpy`` to force the pure-numpy path even when numba
is importable; ``OPTODARK_BACKEND=numba`` (the default) uses numba when it is
installed and silently falls back otherwise.
"""

from __future__ import annotations

import os

BACKEND_ENV = "OPTODARK_BACKEND"

try:
    import numba as _numba
except ImportError:  # pragma: no cover - exercised only without numba
    _numba = None

HAVE_NUMBA = _numba is not None


def requested_backend() -> str:
    value = os.environ.get(BACKEND_ENV, "numba").strip().lower()
    if value not in ("numba", "numpy"):
        raise ValueError(f"{BACKEND_ENV} must be 'numba' or 'numpy', got {value!r}")
    return value


USE_NUMBA = HAVE_NUMBA and requested_backend() == "numba"


def njit(func):
    """``numba.njit(cache=True)`` when numba is available, identity otherwise."""
    if not HAVE_NUMBA:
        return func
    return _numba.njit(cache=True, nogil=True)(func)
