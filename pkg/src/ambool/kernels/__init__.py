"""Geometry kernel backend selection.

The compiled Cython extension is preferred when present; the pure-numpy
implementation is the fallback. Set ``AMBOOL_PURE_PYTHON=1`` to force the
fallback (used by the benchmark and for debugging).
"""
import os

from . import pure as _pure

if os.environ.get("AMBOOL_PURE_PYTHON"):
    _impl = _pure
else:
    try:
        from . import _fast as _impl
    except ImportError:
        _impl = _pure

BACKEND = _impl.BACKEND

closest_on_tri = _impl.closest_on_tri
tri_distance = _impl.tri_distance
tri_overlap = _impl.tri_overlap
tri_segment = _impl.tri_segment
ray_tris = _impl.ray_tris
