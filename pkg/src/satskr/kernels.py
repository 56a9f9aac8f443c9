"""Kernel backend selection.

Imports the compiled kernels when available, otherwise the pure-Python
reference. ``SKR_PURE_PYTHON=1`` forces the fallback (useful for the
benchmark and for debugging).
"""
from __future__ import annotations

import os

if os.environ.get("SKR_PURE_PYTHON", "") not in ("", "0"):
    from satskr import _kernels_py as _impl
else:
    try:
        from satskr import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from satskr import _kernels_py as _impl

BACKEND: str = _impl.BACKEND
MAX_DEPTH: int = _impl.MAX_DEPTH

g_entropy_raw = _impl.g_entropy_raw
capture_fraction_centered = _impl.capture_fraction_centered
capture_fraction_offset = _impl.capture_fraction_offset
