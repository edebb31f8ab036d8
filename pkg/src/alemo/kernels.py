"""Backend selection for the hot loops.

The compiled extension ``alemo._kernels`` is used when it imports; set
``ALEMO_PURE_PYTHON=1`` to force the numpy fallback.
"""
import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("ALEMO_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # pragma: no cover - depends on build
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"


def get_backend(name=None):
    """Return the kernel module for ``name`` ("cython", "python" or None=active)."""
    if name is None:
        return _impl
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown kernel backend {name!r}")


def nd_ranks(F, backend=None):
    return get_backend(backend).nd_ranks(np.ascontiguousarray(F, dtype=float))


def hv2d(P, z, backend=None):
    P = np.ascontiguousarray(P, dtype=float).reshape(-1, 2)
    return float(get_backend(backend).hv2d(P, np.ascontiguousarray(z, dtype=float)))


def hv3d(P, z, backend=None):
    P = np.ascontiguousarray(P, dtype=float).reshape(-1, 3)
    return float(get_backend(backend).hv3d(P, np.ascontiguousarray(z, dtype=float)))
