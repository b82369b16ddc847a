"""Approximate Boolean operations on triangle meshes.

Treats meshes as adaptive surfaces: refine locally, delete the intersecting
triangles, and zipper the resulting boundary loops back together under
projection constraints.
"""

__version__ = "0.1.0"

from . import kernels
