"""Lifting a bar 1-visibility drawing to a z-parallel rectangle scene.

Every vertex bar becomes a rectangle with the same x-interval and z. Direct
visibilities become cylinders on the plane y = 0. A visibility that crosses
one bar w is lifted off that plane: the rules below orient the kite sides
around w so that, after the y-assignment, both endpoints of the edge reach
past the top (or bottom) of w, and the cylinder runs just above (below) it.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .bar_visibility import BarDrawing
from .bar1 import TraversalMap
from .graph_model import InternalError
from .shapes import DIAMOND, LEFT_WING, RIGHT_WING, FaceShape, classify_faces

__all__ = [
    "ABOVE",
    "BELOW",
    "EPSILON",
    "Cylinder",
    "PartialOrientation",
    "Rect",
    "ZprScene",
    "assign_y",
    "build_orientations",
    "check_acyclic",
    "classify_faces",
    "direct_scene",
    "place_cylinders",
    "preliminary_rects",
    "total_order",
]

EPSILON = Fraction(1, 4)
ABOVE = "above"
BELOW = "below"


# ---------------------------------------------------------------------------
# Exact number serialization
# ---------------------------------------------------------------------------


def dump_number(q: Fraction | int) -> int | str:
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def load_number(x: int | str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ValueError(f"not an exact number: {x!r}")
    return Fraction(x)


# ---------------------------------------------------------------------------
# Partial orientations
# ---------------------------------------------------------------------------


@dataclass
class PartialOrientation:
    """Directed skeleton edges plus the traversing edges this side carries.

    ``arcs`` maps a skeleton edge id to ``(tail, head)``. ``carries`` maps a
    traversing edge id to the bar it crosses; those cylinders are placed on
    this orientation's side of the bar.
    """

    label: str
    vertices: tuple[int, ...] = ()
    arcs: dict[int, tuple[int, int]] = field(default_factory=dict)
    carries: dict[int, int] = field(default_factory=dict)

    def orient(self, e: int, tail: int, head: int) -> None:
        if e in self.arcs:
            raise InternalError(f"edge {e} oriented twice in {self.label}")
        self.arcs[e] = (tail, head)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "arcs": [{"edge": e, "tail": t, "head": h} for e, (t, h) in sorted(self.arcs.items())],
            "carries": {str(e): w for e, w in sorted(self.carries.items())},
        }


def build_orientations(
    shapes: Sequence[FaceShape], tm: TraversalMap, vertices: Iterable[int] = ()
) -> tuple[PartialOrientation, PartialOrientation]:
    """Apply the wing and diamond rules to every kite face."""
    vs = tuple(sorted(vertices))
    o1 = PartialOrientation("O1", vs)
    o2 = PartialOrientation("O2", vs)
    for sh in shapes:
        o, u, v, d = sh.o, sh.u, sh.v, sh.d
        if sh.kind == DIAMOND:
            e = sh.diagonal(o, d)
            w = tm.traversed.get(e)
            if w == v:
                po, pairs = o1, ((o, v), (d, v))
            elif w == u:
                po, pairs = o2, ((o, u), (d, u))
            else:
                raise InternalError(f"diamond {sh.dummy}: diagonal ({o},{d}) does not cross an intermediate")
        else:
            po = o1 if sh.kind == RIGHT_WING else o2
            e_ud, e_ov = sh.diagonal(u, d), sh.diagonal(o, v)
            if tm.traversed.get(e_ud) == v:
                e, w, pairs = e_ud, v, ((u, v), (d, v))
            elif tm.traversed.get(e_ov) == u:
                e, w, pairs = e_ov, u, ((o, u), (v, u))
            else:
                raise InternalError(f"wing {sh.dummy}: no diagonal crosses the opposite intermediate")
        for a, b in pairs:
            po.orient(sh.side(a, b), a, b)
        po.carries[e] = w
    return o1, o2


def check_acyclic(po: PartialOrientation) -> tuple[int, ...] | None:
    """``None`` if the oriented edges form a DAG, else the vertices of one cycle."""
    out: dict[int, list[int]] = defaultdict(list)
    indeg: dict[int, int] = defaultdict(int)
    for t, h in po.arcs.values():
        out[t].append(h)
        indeg[h] += 1
        indeg.setdefault(t, 0)
    stack = [v for v, c in indeg.items() if c == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    if seen == len(indeg):
        return None
    # every leftover vertex has a leftover predecessor; walk backwards to a repeat
    pred = {h: t for t, h in po.arcs.values() if indeg[h] > 0 and indeg[t] > 0}
    v = next(iter(pred))
    path: list[int] = []
    pos: dict[int, int] = {}
    while v not in pos:
        pos[v] = len(path)
        path.append(v)
        v = pred[v]
    cycle = path[pos[v]:]
    return tuple(reversed(cycle))


def total_order(po: PartialOrientation, vertices: Iterable[int] | None = None) -> tuple[int, ...]:
    """Concatenated topological orders of the oriented components.

    Components come in order of their smallest vertex, each ordered by a
    smallest-id-first Kahn sweep; vertices touching no oriented edge follow
    in id order.
    """
    vs = sorted(po.vertices if vertices is None else vertices)
    parent = {v: v for v in vs}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    out: dict[int, list[int]] = defaultdict(list)
    indeg: dict[int, int] = defaultdict(int)
    touched = set()
    for t, h in po.arcs.values():
        for x in (t, h):
            if x not in parent:
                parent[x] = x
                vs.append(x)
        out[t].append(h)
        indeg[h] += 1
        touched.update((t, h))
        a, b = find(t), find(h)
        if a != b:
            parent[max(a, b)] = min(a, b)
    comps: dict[int, list[int]] = defaultdict(list)
    for v in sorted(touched):
        comps[find(v)].append(v)
    order: list[int] = []
    for root in sorted(comps):
        heap = [v for v in comps[root] if indeg[v] == 0]
        heapq.heapify(heap)
        start = len(order)
        while heap:
            v = heapq.heappop(heap)
            order.append(v)
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, w)
        if len(order) - start != len(comps[root]):
            raise InternalError(f"{po.label} has a cycle; no total order exists")
    order.extend(v for v in sorted(vs) if v not in touched)
    return tuple(order)


# ---------------------------------------------------------------------------
# Rectangles and cylinders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Rect:
    v: int
    z: int
    xL: int
    xR: int
    yBot: int
    yTop: int

    def to_json(self) -> dict:
        return {"v": self.v, "z": self.z, "xL": self.xL, "xR": self.xR, "yBot": self.yBot, "yTop": self.yTop}


@dataclass(frozen=True)
class Cylinder:
    edge: int
    x: Fraction
    y: Fraction
    zLow: int
    zHigh: int

    def to_json(self) -> dict:
        return {
            "edge": self.edge,
            "x": dump_number(self.x),
            "y": dump_number(self.y),
            "zLow": self.zLow,
            "zHigh": self.zHigh,
        }


@dataclass(frozen=True)
class ZprScene:
    rects: Mapping[int, Rect]
    cylinders: Mapping[int, Cylinder]
    epsilon: Fraction = EPSILON

    def to_json(self) -> dict:
        return {
            "epsilon": dump_number(self.epsilon),
            "rects": [r.to_json() for _, r in sorted(self.rects.items())],
            "cylinders": [c.to_json() for _, c in sorted(self.cylinders.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> ZprScene:
        try:
            rects = {}
            for r in data["rects"]:
                vals = [load_number(r[k]) for k in ("z", "xL", "xR", "yBot", "yTop")]
                if any(q.denominator != 1 for q in vals):
                    raise ValueError("rectangle coordinates must be integers")
                z, xl, xr, yb, yt = (int(q) for q in vals)
                rects[int(r["v"])] = Rect(int(r["v"]), z, xl, xr, yb, yt)
            cyls = {}
            for c in data["cylinders"]:
                cyls[int(c["edge"])] = Cylinder(
                    int(c["edge"]),
                    load_number(c["x"]),
                    load_number(c["y"]),
                    int(load_number(c["zLow"])),
                    int(load_number(c["zHigh"])),
                )
            eps = load_number(data.get("epsilon", "1/4"))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed scene: {exc}") from exc
        if len(rects) != len(data["rects"]) or len(cyls) != len(data["cylinders"]):
            raise ValueError("malformed scene: duplicate rectangle or cylinder ids")
        if eps <= 0:
            raise ValueError("malformed scene: epsilon must be positive")
        return cls(rects, cyls, eps)

    def bounding_box(self) -> tuple[Fraction, Fraction, Fraction, Fraction, int, int]:
        rs = list(self.rects.values())
        return (
            Fraction(min(r.xL for r in rs)),
            Fraction(max(r.xR for r in rs)),
            Fraction(min(r.yBot for r in rs)),
            Fraction(max(r.yTop for r in rs)),
            min(r.z for r in rs),
            max(r.z for r in rs),
        )


def preliminary_rects(gamma1: BarDrawing) -> dict[int, Rect]:
    """Every bar thickened to the y-interval [-1, 1]."""
    return {v: Rect(v, b.z, b.xL, b.xR, -1, 1) for v, b in gamma1.bars.items()}


def assign_y(sigma1: Sequence[int], sigma2: Sequence[int], rects: Mapping[int, Rect]) -> dict[int, Rect]:
    """Tops from the position in ``sigma1``, bottoms from the position in ``sigma2``."""
    n = len(rects)
    for name, s in (("sigma1", sigma1), ("sigma2", sigma2)):
        if len(s) != n or set(s) != set(rects):
            raise ValueError(f"{name} is not a permutation of the rectangle vertices")
    top = {v: n - i for i, v in enumerate(sigma1)}
    bot = {v: i - n for i, v in enumerate(sigma2)}
    return {v: replace(r, yBot=bot[v], yTop=top[v]) for v, r in rects.items()}


def place_cylinders(
    gamma1: BarDrawing,
    tm: TraversalMap,
    rects: Mapping[int, Rect],
    orientations: tuple[PartialOrientation, PartialOrientation],
    edges: Mapping[int, tuple[int, int]],
) -> ZprScene:
    """One cylinder for every edge in ``edges`` (id -> endpoints)."""
    o1, o2 = orientations
    cyls = {}
    for e in sorted(edges):
        vis = gamma1.visibilities[e]
        w = tm.traversed.get(e)
        if w is None:
            y = Fraction(0)
        else:
            a, b = edges[e]
            ra, rb, rw = rects[a], rects[b], rects[w]
            if o1.carries.get(e) == w:
                if min(ra.yTop, rb.yTop) < rw.yTop + 1:
                    raise InternalError(f"edge {e}: endpoints do not clear the top of {w}")
                y = rw.yTop + Fraction(1, 2)
            elif o2.carries.get(e) == w:
                if max(ra.yBot, rb.yBot) > rw.yBot - 1:
                    raise InternalError(f"edge {e}: endpoints do not clear the bottom of {w}")
                y = rw.yBot - Fraction(1, 2)
            else:
                raise InternalError(f"edge {e} traverses {w} but no rule placed it")
        cyls[e] = Cylinder(e, Fraction(vis.x), y, vis.zLow, vis.zHigh)
    return ZprScene(dict(rects), cyls)


def direct_scene(gamma1: BarDrawing, tm: TraversalMap) -> ZprScene:
    """Preliminary rectangles with a cylinder at y = 0 for every direct visibility."""
    rects = preliminary_rects(gamma1)
    cyls = {
        e: Cylinder(e, Fraction(s.x), Fraction(0), s.zLow, s.zHigh)
        for e, s in sorted(gamma1.visibilities.items())
        if tm.traversed.get(e) is None
    }
    return ZprScene(rects, cyls)
