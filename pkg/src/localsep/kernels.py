"""Kernel selection: compiled extension when available, pure Python otherwise.

Set LOCALSEP_KERNEL=python (or =compiled) to force a backend; the benchmark
and the equivalence tests use this to compare the two.
"""

from __future__ import annotations

import os

from . import _kernels_py

_forced = os.environ.get("LOCALSEP_KERNEL", "").strip().lower()

if _forced == "python":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        if _forced == "compiled":
            raise ImportError(
                "LOCALSEP_KERNEL=compiled but the localsep._kernels extension is not built"
            )
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
enumerate_cycles = _impl.enumerate_cycles
gf2_rank = _impl.gf2_rank
