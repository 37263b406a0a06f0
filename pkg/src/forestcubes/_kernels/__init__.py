"""Hot-loop kernels: compiled extension when available, pure Python otherwise.

Set FORESTCUBES_PURE=1 to force the pure implementation (used by the
benchmark and by tests that compare the two).
"""

import os

from . import _purepy

if os.environ.get("FORESTCUBES_PURE"):
    _impl = _purepy
else:
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _purepy

IMPLEMENTATION = _impl.IMPLEMENTATION
union_labels = _impl.union_labels
noncorner_scan = _impl.noncorner_scan

__all__ = ["IMPLEMENTATION", "union_labels", "noncorner_scan"]
