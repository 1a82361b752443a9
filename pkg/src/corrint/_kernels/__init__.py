"""Kernel backend selection.

The compiled Cython backend is preferred when present; the vectorized numpy
backend is the fallback.  Set CORRINT_PURE=1 to force the numpy backend.
"""

import os

from . import _profile_np

if os.environ.get("CORRINT_PURE", "0") == "1":
    backend = _profile_np
else:
    try:
        from . import _profile_cy as backend  # type: ignore[no-redef]
    except ImportError:
        backend = _profile_np

numpy_backend = _profile_np


def compiled_backend_available():
    try:
        from . import _profile_cy  # noqa: F401
    except ImportError:
        return False
    return True
