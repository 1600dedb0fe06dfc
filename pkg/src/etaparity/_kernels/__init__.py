"""Kernel backend selection.

The compiled extension is preferred when importable; set
ETAPARITY_BACKEND=pure or ETAPARITY_BACKEND=compiled to force a choice.
Both backends expose: NAME, mul_sparse(bits, n, exps),
quotient(nums, dens, n).
"""

from __future__ import annotations

import os

_requested = os.environ.get("ETAPARITY_BACKEND", "").strip().lower()
if _requested not in ("", "pure", "compiled"):
    raise ImportError(f"ETAPARITY_BACKEND must be 'pure' or 'compiled', got {_requested!r}")

backend = None
if _requested != "pure":
    try:
        from etaparity._kernels import compiled as backend
    except ImportError:
        if _requested == "compiled":
            raise ImportError("compiled backend requested but etaparity._core is not built")
        backend = None
if backend is None:
    from etaparity._kernels import pure as backend

BACKEND_NAME = backend.NAME
