"""Hot-loop kernels: compiled extension when available, NumPy fallback otherwise.

The backend is chosen once at import time.  Set the environment variable
``QSTARLIKE_PURE_PYTHON=1`` to force the NumPy fallback (used by the
benchmark and the backend-parity tests).  Both backends are numerically
interchangeable: identical per-point arithmetic and tie-breaking.
"""

from __future__ import annotations

import os

from . import _ref

if os.environ.get("QSTARLIKE_PURE_PYTHON"):
    _impl = _ref
    _BACKEND = "python"
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        _BACKEND = "cython"
    except ImportError:
        _impl = _ref
        _BACKEND = "python"

# bulk evaluation is not a bottleneck; it always uses the NumPy path
polyval_many = _ref.polyval_many
ratio_eval = _ref.ratio_eval
ratio_point = _impl.ratio_point
ratio_min_re = _impl.ratio_min_re
hankel_grid_max = _impl.hankel_grid_max
fs_grid_max = _impl.fs_grid_max


def backend_name() -> str:
    """Name of the active kernel backend: 'cython' or 'python'."""
    return _BACKEND


__all__ = [
    "backend_name",
    "polyval_many",
    "ratio_eval",
    "ratio_point",
    "ratio_min_re",
    "hankel_grid_max",
    "fs_grid_max",
]
