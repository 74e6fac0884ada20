"""Sparse exact elimination kernel with backend selection.

At import time the compiled extension is preferred; the pure-Python twin is
the fallback.  Set ``SYMCOMP_PURE=1`` to force the pure backend (used by the
benchmark and the twin-consistency tests).
"""

import os

if os.environ.get("SYMCOMP_PURE") == "1":
    from . import _ref as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _ref as _impl

echelon = _impl.echelon
BACKEND = _impl.BACKEND


def load_backend(name):
    """Return the named kernel module ("pure" or "compiled"); None if absent."""
    if name == "pure":
        from . import _ref

        return _ref
    try:
        from . import _core  # type: ignore[attr-defined]

        return _core
    except ImportError:
        return None
