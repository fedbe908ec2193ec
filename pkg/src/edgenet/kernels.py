"""Backend selection for the hot loops.

The compiled extension ``edgenet._ext`` is used when importable; setting
``EDGENET_PURE_PYTHON=1`` forces the numpy fallback.
"""

import os

from . import _kernels_py

GENERIC = _kernels_py.GENERIC
LINE = _kernels_py.LINE
POINT = _kernels_py.POINT


def _load():
    if os.environ.get("EDGENET_PURE_PYTHON", "") not in ("", "0"):
        return _kernels_py, "python"
    try:
        from . import _ext
    except ImportError:
        return _kernels_py, "python"
    return _ext, "cython"


_backend, BACKEND = _load()

quad_core = _backend.quad_core
edge_residuals = _backend.edge_residuals
frame_propagate = _backend.frame_propagate
moutard_fill = _backend.moutard_fill


def get_backend(name):
    """Return the kernel module for ``"python"`` or ``"cython"``."""
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _ext

        return _ext
    raise ValueError(f"unknown backend {name!r}")
