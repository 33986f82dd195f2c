"""The full drawing pipeline with every intermediate stage kept."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .augment import FROM_G, AugmentedGraph, augment
from .bar1 import TraversalMap, reinsert_crossings
from .bar_visibility import BarDrawing, PlanarSkeleton, StOrientation, bars, choose_st_and_orient, skeleton
from .graph_model import InternalError, OnePlaneGraph, require_valid
from .lift import (
    PartialOrientation,
    ZprScene,
    assign_y,
    build_orientations,
    check_acyclic,
    place_cylinders,
    preliminary_rects,
    total_order,
)
from .shapes import FaceShape

STAGES = ("augment", "skeleton", "orient", "bars", "gamma1", "orientations", "orders")


@dataclass(frozen=True)
class DrawResult:
    graph: OnePlaneGraph
    augmented: AugmentedGraph
    skeleton: PlanarSkeleton
    orientation: StOrientation
    bars: BarDrawing
    gamma1: BarDrawing
    traversals: TraversalMap
    shapes: tuple[FaceShape, ...]
    o1: PartialOrientation
    o2: PartialOrientation
    sigma1: tuple[int, ...]
    sigma2: tuple[int, ...]
    scene: ZprScene

    def stage_json(self, stage: str) -> dict:
        """JSON of one named intermediate stage."""
        if stage == "augment":
            return self.augmented.to_json()
        if stage == "skeleton":
            return self.skeleton.to_json()
        if stage == "orient":
            return self.orientation.to_json()
        if stage == "bars":
            return self.bars.to_json()
        if stage == "gamma1":
            out = self.gamma1.to_json()
            out["shapes"] = [s.to_json() for s in self.shapes]
            return out
        if stage == "orientations":
            return {"O1": self.o1.to_json(), "O2": self.o2.to_json()}
        if stage == "orders":
            return {"sigma1": list(self.sigma1), "sigma2": list(self.sigma2)}
        raise ValueError(f"unknown stage {stage!r}; expected one of {', '.join(STAGES)}")


def draw(
    g: OnePlaneGraph,
    sigma1: Sequence[int] | None = None,
    sigma2: Sequence[int] | None = None,
) -> DrawResult:
    """Compute a 1-visible z-parallel representation of ``g``.

    ``sigma1``/``sigma2`` override the computed total orders; they must extend
    the respective orientation.
    """
    require_valid(g)
    aug = augment(g, validated=True)
    skel = skeleton(aug)
    st = choose_st_and_orient(skel)
    bd = bars(st)
    gamma1, tm, shapes = reinsert_crossings(bd, aug, st)
    o1, o2 = build_orientations(shapes, tm, skel.vertices)
    for po in (o1, o2):
        cyc = check_acyclic(po)
        if cyc is not None:
            raise InternalError(f"{po.label} has a cycle through {list(cyc)}")
    s1 = total_order(o1) if sigma1 is None else tuple(sigma1)
    s2 = total_order(o2) if sigma2 is None else tuple(sigma2)
    for po, s in ((o1, s1), (o2, s2)):
        pos = {v: i for i, v in enumerate(s)}
        for t, h in po.arcs.values():
            if not pos.get(t, -1) < pos.get(h, -1):
                raise ValueError(f"order for {po.label} puts {h} before {t}")
    rects = assign_y(s1, s2, preliminary_rects(gamma1))
    g_edges = {e: aug.graph.endpoints[e] for e in aug.edges_of(FROM_G)}
    scene = place_cylinders(gamma1, tm, rects, (o1, o2), g_edges)
    return DrawResult(g, aug, skel, st, bd, gamma1, tm, tuple(shapes), o1, o2, s1, s2, scene)
