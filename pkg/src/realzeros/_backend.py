"""Backend selection, resolved once at import.

REALZEROS_BACKEND=auto|cython|python (default auto: compiled core when the
extension built, numpy fallback otherwise). `cython` fails loudly when the
extension is missing instead of silently degrading.
"""

from __future__ import annotations

import os

from . import _corepy

_requested = os.environ.get("REALZEROS_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "cython", "python"):
    raise ImportError("REALZEROS_BACKEND must be auto, cython, or python, not %r" % _requested)

core = None
if _requested in ("auto", "cython"):
    try:
        from . import _core as core  # type: ignore[no-redef]
    except ImportError:
        core = None
        if _requested == "cython":
            raise ImportError(
                "REALZEROS_BACKEND=cython requested but the compiled core is not importable"
            )
if core is None:
    core = _corepy

backend_name: str = core.backend_name


def get_backend():
    return core


def available_backends() -> dict:
    """Importable backends by name; used by the benchmark and parity tests."""
    out = {"python": _corepy}
    try:
        from . import _core

        out["cython"] = _core
    except ImportError:
        pass
    return out
