"""1-visible z-parallel visibility representations of 1-plane graphs.

Vertices become horizontal rectangles on distinct planes, edges become thin
vertical cylinders, and the plane Y = 0 cuts the scene in a bar visibility
drawing where each edge crosses at most one bar.
"""

from __future__ import annotations

from .augment import AugmentedGraph, UnsupportedGraphError, augment
from .generate import fixtures, gen
from .graph_model import InternalError, InvalidGraphError, OnePlaneGraph, ZprError, from_drawing, validate
from .lift import ZprScene
from .pipeline import DrawResult, draw
from .verify import free_channel, verify_one_visible, verify_volume, verify_zpr

__all__ = [
    "AugmentedGraph",
    "DrawResult",
    "InternalError",
    "InvalidGraphError",
    "OnePlaneGraph",
    "UnsupportedGraphError",
    "ZprError",
    "ZprScene",
    "augment",
    "draw",
    "fixtures",
    "free_channel",
    "from_drawing",
    "gen",
    "validate",
    "verify_one_visible",
    "verify_volume",
    "verify_zpr",
]
