"""Kernel backend selection.

The hot loops (projection growth and candidate scans) exist twice: a compiled
Cython extension (``_ckern``) and a pure-Python reference (``pyref``).  The
compiled one is preferred when importable; set ``HUSMINE_KERNELS=py`` or
``HUSMINE_KERNELS=c`` to force a backend.  Both produce identical results —
``benchmarks/backend_bench.py`` compares their speed.
"""

from __future__ import annotations

import os

from . import pyref

try:
    from . import _ckern
except ImportError:
    _ckern = None


def get_backend(name: str):
    """Return the kernel module for ``name`` ('c' or 'py')."""
    if name == "py":
        return pyref
    if name == "c":
        if _ckern is None:
            raise ImportError("compiled kernel backend is not available")
        return _ckern
    raise ValueError(f"unknown kernel backend {name!r}")


def available_backends() -> tuple[str, ...]:
    return ("c", "py") if _ckern is not None else ("py",)


_requested = os.environ.get("HUSMINE_KERNELS", "").strip().lower()
if _requested:
    active = get_backend(_requested)
else:
    active = _ckern if _ckern is not None else pyref

BACKEND = "c" if active is _ckern else "py"
