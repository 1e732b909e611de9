"""Kernel backend selection.

The compiled Cython kernels are used when available; the pure-Python
implementations are the fallback and the reference.  Both produce identical
results.  Set ``GCCKIT_PURE_KERNELS=1`` to force the fallback.
"""

from __future__ import annotations

import os

if os.environ.get("GCCKIT_PURE_KERNELS") == "1":
    from . import _pykernels as _impl
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pykernels as _impl

BACKEND = _impl.BACKEND
reach = _impl.reach
coreach = _impl.coreach
product = _impl.product
pair_bfs = _impl.pair_bfs
supcon_prune = _impl.supcon_prune

__all__ = [
    "BACKEND",
    "reach",
    "coreach",
    "product",
    "pair_bfs",
    "supcon_prune",
]
