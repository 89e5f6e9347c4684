"""Refinement kernel selection: compiled extension with pure fallback.

The environment variable SYMWIT_WL_BACKEND forces a backend: ``cython``
fails loudly when the extension is missing, ``python`` skips it.  The
default tries the extension and silently falls back.
"""

from __future__ import annotations

import os

_forced = os.environ.get("SYMWIT_WL_BACKEND", "").strip().lower()

if _forced in ("python", "pure"):
    from . import _wlpure as _impl

    BACKEND = "python"
elif _forced in ("", "cython", "c"):
    try:
        from . import _wlcore as _impl

        BACKEND = "cython"
    except ImportError:
        if _forced:
            raise ImportError(
                "SYMWIT_WL_BACKEND=cython but the compiled kernel is not built"
            ) from None
        from . import _wlpure as _impl

        BACKEND = "python"
else:
    raise ImportError(f"unknown SYMWIT_WL_BACKEND value {_forced!r}")

refine_ordered = _impl.refine_ordered


def backend_for(name):
    """Kernel function for an explicit backend name (used by benchmarks)."""
    if name == "python":
        from . import _wlpure

        return _wlpure.refine_ordered
    if name == "cython":
        from . import _wlcore

        return _wlcore.refine_ordered
    raise ValueError(f"unknown backend {name!r}")
