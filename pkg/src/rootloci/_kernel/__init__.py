"""Kernel selection: compiled extension if available, pure Python otherwise.

Set ROOTLOCI_PURE=1 to force the pure-Python kernel even when the compiled
one is importable.
"""

import os

from .layout import Layout

if os.environ.get("ROOTLOCI_PURE"):
    from . import pykernel as impl
else:
    try:
        from . import _ckernel as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import pykernel as impl

IMPLEMENTATION = impl.IMPLEMENTATION
make_context = impl.make_context
sort_terms = impl.sort_terms
normalize_terms = impl.normalize_terms
spoly_terms = impl.spoly_terms
reduce_terms = impl.reduce_terms

__all__ = [
    "IMPLEMENTATION",
    "Layout",
    "make_context",
    "sort_terms",
    "normalize_terms",
    "spoly_terms",
    "reduce_terms",
]
