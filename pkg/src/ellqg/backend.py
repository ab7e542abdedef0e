"""Kernel backend selection.

The hot inner loops (truncated q-products) exist twice: jitted scalar
loops in ``_kernels_numba`` and vectorized fallbacks in ``_kernels_numpy``.
The environment variable ELLQG_BACKEND picks one:

    ELLQG_BACKEND=numba   require numba (ImportError if missing)
    ELLQG_BACKEND=numpy   force the pure-numpy path
    unset / auto          numba when importable, numpy otherwise
"""

import os

from .errors import DomainError


def load(name):
    """Import and return a kernel module by backend name."""
    if name == "numba":
        from . import _kernels_numba as mod
    elif name == "numpy":
        from . import _kernels_numpy as mod
    else:
        raise DomainError(f"unknown backend {name!r} (expected 'numba' or 'numpy')")
    return mod


def _select():
    choice = os.environ.get("ELLQG_BACKEND", "auto").lower()
    if choice in ("numba", "numpy"):
        return load(choice)
    try:
        return load("numba")
    except ImportError:
        return load("numpy")


kernels = _select()
