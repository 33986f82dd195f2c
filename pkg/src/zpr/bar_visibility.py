"""Planar skeleton, st-orientation and bar visibility drawing.

Bars and visibilities live on the integer grid with x doubled: bar ends sit
on even abscissae and every visibility runs along the odd abscissa in the
middle of a unit column, so a column ``c`` spans ``[2c, 2c + 2]``.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Mapping

from .augment import AugmentedGraph
from .graph_model import Embedding, InternalError

S_STAR = -1
T_STAR = -2


# ---------------------------------------------------------------------------
# Skeleton
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PlanarSkeleton:
    embedding: Embedding
    vertices: tuple[int, ...]
    ends: Mapping[int, tuple[int, int]]
    origin: Mapping[int, str]
    face_of: tuple[int, ...]
    walks: tuple[tuple[int, ...], ...]
    outer_face: int
    kite_face: Mapping[int, int]  # dummy id -> face id
    crossing: Mapping[int, tuple[int, int]]  # dummy id -> crossing edge ids

    def dart(self, e: int, tail: int) -> int:
        emb = self.embedding
        for d in self._darts_of[e]:
            if emb.tail[d] == tail:
                return d
        raise KeyError((e, tail))

    @property
    def _darts_of(self) -> dict[int, list[int]]:
        cache = self.__dict__.get("_dcache")
        if cache is None:
            cache = defaultdict(list)
            for d in self.embedding.darts():
                cache[self.embedding.edge[d]].append(d)
            self.__dict__["_dcache"] = cache
        return cache

    def to_json(self) -> dict:
        emb = self.embedding
        return {
            "vertices": list(self.vertices),
            "edges": [[u, v, e] for e, (u, v) in sorted(self.ends.items())],
            "origin": {str(e): k for e, k in sorted(self.origin.items())},
            "rotation": {
                str(x): [[emb.edge[d], emb.head[d]] for d in emb.rotation(x)] for x in sorted(self.vertices)
            },
            "outerFace": list(emb.dart_ref(emb.outer)) if emb.outer >= 0 else None,
            "kiteFaces": {
                str(x): [list(emb.dart_ref(d)) for d in self.walks[f]] for x, f in sorted(self.kite_face.items())
            },
        }


def skeleton(aug: AugmentedGraph) -> PlanarSkeleton:
    """Delete every crossing pair from G' and index the resulting faces."""
    g = aug.graph
    crossed = set(g.crossing_of)
    emb = Embedding()
    for v in g.vertices:
        emb.add_node(v)
    index = {}
    ends = {}
    for u, v, e in g.edges:
        if e in crossed:
            continue
        d = emb.new_pair(u, v, e)
        index[(e, u)] = d
        index[(e, v)] = d + 1
        ends[e] = (u, v)
    for v in g.vertices:
        for e, w in g.rotation.get(v, ()):
            if e not in crossed:
                emb.link_last(index[(e, v)])
    if g.outer is not None:
        e, a, _ = g.outer
        emb.outer = index[(e, a)]
    face_of, walks = emb.trace_faces()
    outer = face_of[emb.outer] if emb.outer >= 0 else -1
    kite_face = {}
    for e1, e2, x in g.crossings:
        sides = aug.kite_sides[x]
        for d in (index[(sides[0], ends[sides[0]][0])], index[(sides[0], ends[sides[0]][1])]):
            w = walks[face_of[d]]
            if face_of[d] != outer and len(w) == 4 and {emb.edge[h] for h in w} == set(sides):
                kite_face[x] = face_of[d]
                break
        else:
            raise InternalError(f"crossing {x} does not leave a quadrilateral face")
    if outer in kite_face.values():
        raise InternalError("outer face of the skeleton is a kite")
    return PlanarSkeleton(
        embedding=emb,
        vertices=tuple(g.vertices),
        ends=ends,
        origin={e: aug.origin[e] for e in ends},
        face_of=tuple(face_of),
        walks=tuple(tuple(w) for w in walks),
        outer_face=outer,
        kite_face=kite_face,
        crossing={x: (a, b) for a, b, x in g.crossings},
    )


# ---------------------------------------------------------------------------
# st-orientation
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class StOrientation:
    skeleton: PlanarSkeleton
    s: int
    t: int
    number: Mapping[int, int]
    direction: Mapping[int, tuple[int, int]]  # edge id -> (tail, head)

    def forward_dart(self, e: int) -> int:
        return self.skeleton.dart(e, self.direction[e][0])

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "t": self.t,
            "number": {str(v): k for v, k in sorted(self.number.items())},
            "edges": [[a, b, e] for e, (a, b) in sorted(self.direction.items())],
        }


def _st_numbering(skel: PlanarSkeleton, s: int, t: int, st_edge: int) -> dict[int, int]:
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in skel.vertices}
    for e, (u, v) in skel.ends.items():
        adj[u].append((v, e))
        adj[v].append((u, e))
    adj[s].sort(key=lambda p: p[1] != st_edge)
    pre = {s: 0}
    parent: dict[int, int] = {}
    parent_edge: dict[int, int] = {}
    low = {s: 0}
    order = [s]
    stack = [(s, 0)]
    while stack:
        v, i = stack[-1]
        if i < len(adj[v]):
            stack[-1] = (v, i + 1)
            w, e = adj[v][i]
            if w not in pre:
                pre[w] = low[w] = len(order)
                order.append(w)
                parent[w] = v
                parent_edge[w] = e
                stack.append((w, 0))
            elif e != parent_edge.get(v):
                low[v] = min(low[v], pre[w])
        else:
            stack.pop()
            if v in parent:
                p = parent[v]
                low[p] = min(low[p], low[v])
    if len(order) != len(skel.vertices):
        raise InternalError("skeleton is disconnected")
    if len(order) == 1:
        return {s: 0}
    if order[1] != t:
        raise InternalError("st edge was not the first tree edge")
    nxt = {s: t, t: None}
    prv = {s: None, t: s}
    sign = {s: -1}
    for v in order[2:]:
        p = parent[v]
        if sign.get(order[low[v]], -1) == -1:
            a = prv[p]
            nxt[a], prv[v], nxt[v], prv[p] = v, a, p, v
            sign[p] = 1
        else:
            b = nxt[p]
            nxt[p], prv[v], nxt[v] = v, p, b
            if b is not None:
                prv[b] = v
            sign[p] = -1
    number = {}
    v, k = s, 0
    while v is not None:
        number[v] = k
        k += 1
        v = nxt[v]
    return number


def choose_st_and_orient(skel: PlanarSkeleton) -> StOrientation:
    """Orient the skeleton as a planar st-graph with s, t on the outer face."""
    emb = skel.embedding
    if not skel.ends:
        (v,) = skel.vertices
        return StOrientation(skel, v, v, {v: 0}, {})
    outer = skel.walks[skel.outer_face]
    st_edge = min(outer, key=lambda d: (min(emb.tail[d], emb.head[d]), max(emb.tail[d], emb.head[d]), emb.edge[d]))
    e = emb.edge[st_edge]
    s, t = sorted(skel.ends[e])
    number = _st_numbering(skel, s, t, e)
    direction = {}
    indeg: dict[int, int] = defaultdict(int)
    outdeg: dict[int, int] = defaultdict(int)
    for e, (u, v) in skel.ends.items():
        a, b = (u, v) if number[u] < number[v] else (v, u)
        direction[e] = (a, b)
        outdeg[a] += 1
        indeg[b] += 1
    sources = [v for v in skel.vertices if indeg[v] == 0]
    sinks = [v for v in skel.vertices if outdeg[v] == 0]
    if sources != [s] or sinks != [t]:
        raise InternalError(f"skeleton is not biconnected (sources {sources}, sinks {sinks})")
    return StOrientation(skel, s, t, number, direction)


def is_bimodal(st: StOrientation, v: int) -> bool:
    """Incoming and outgoing darts form two contiguous blocks around ``v``."""
    emb = st.skeleton.embedding
    labels = [st.direction[emb.edge[d]][0] == v for d in emb.rotation(v)]
    changes = sum(labels[i] != labels[i - 1] for i in range(len(labels)))
    return changes <= 2


def left_right_paths(st: StOrientation, face: int) -> tuple[int, int, list[int], list[int]]:
    """Origin, destination, left path and right path (vertex lists) of an inner face."""
    skel = st.skeleton
    if face == skel.outer_face:
        raise ValueError("the outer face has no left/right path decomposition here")
    emb = skel.embedding
    walk = skel.walks[face]
    fwd = [st.direction[emb.edge[d]][0] == emb.tail[d] for d in walk]
    k = len(walk)
    starts = [i for i in range(k) if fwd[i] and not fwd[i - 1]]
    if len(starts) != 1:
        raise InternalError(f"face {face} is not bounded by two directed paths")
    i = starts[0]
    o = emb.tail[walk[i]]
    right = [o]
    while fwd[i % k]:
        right.append(emb.head[walk[i % k]])
        i += 1
    d = right[-1]
    left_rev = [d]
    while not fwd[i % k]:
        left_rev.append(emb.head[walk[i % k]])
        i += 1
    left = left_rev[::-1]
    if left[0] != o:
        raise InternalError(f"face {face} paths do not share an origin")
    return o, d, left, right


# ---------------------------------------------------------------------------
# Bar drawings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Bar:
    v: int
    z: int
    xL: int
    xR: int


@dataclass(frozen=True)
class Visibility:
    edge: int
    x: int
    zLow: int
    zHigh: int
    traverses: tuple[int, ...] = ()


@dataclass(frozen=True)
class BarDrawing:
    bars: Mapping[int, Bar]
    visibilities: Mapping[int, Visibility] = field(default_factory=dict)

    @property
    def width(self) -> int:
        return max(b.xR for b in self.bars.values()) - min(b.xL for b in self.bars.values())

    @property
    def height(self) -> int:
        return max(b.z for b in self.bars.values()) - min(b.z for b in self.bars.values())

    def to_json(self) -> dict:
        return {
            "bars": [{"v": b.v, "z": b.z, "xL": b.xL, "xR": b.xR} for _, b in sorted(self.bars.items())],
            "visibilities": [
                {"edge": s.edge, "x": s.x, "zLow": s.zLow, "zHigh": s.zHigh, "traverses": list(s.traverses)}
                for _, s in sorted(self.visibilities.items())
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "BarDrawing":
        bars = {int(b["v"]): Bar(int(b["v"]), int(b["z"]), int(b["xL"]), int(b["xR"])) for b in data["bars"]}
        vis = {
            int(s["edge"]): Visibility(
                int(s["edge"]), int(s["x"]), int(s["zLow"]), int(s["zHigh"]), tuple(int(w) for w in s["traverses"])
            )
            for s in data.get("visibilities", [])
        }
        return cls(bars, vis)


def dual_abscissae(st: StOrientation) -> tuple[dict[int, int], dict[int, tuple[int, int]]]:
    """Longest-path abscissa of every face in the dual, plus (left, right) face per edge."""
    skel = st.skeleton
    face_of = skel.face_of
    sides: dict[int, tuple[int, int]] = {}
    for e in skel.ends:
        d = st.forward_dart(e)
        lf, rf = face_of[d], face_of[d ^ 1]
        if lf == skel.outer_face:
            lf = S_STAR
        if rf == skel.outer_face:
            rf = T_STAR
        sides[e] = (lf, rf)
    succ: dict[int, list[int]] = defaultdict(list)
    indeg: dict[int, int] = defaultdict(int)
    nodes = {S_STAR, T_STAR} | {f for f in range(len(skel.walks)) if f != skel.outer_face}
    for lf, rf in sides.values():
        succ[lf].append(rf)
        indeg[rf] += 1
    x = {f: 0 for f in nodes}
    queue = deque(sorted(f for f in nodes if indeg[f] == 0))
    seen = 0
    while queue:
        f = queue.popleft()
        seen += 1
        for g in succ[f]:
            x[g] = max(x[g], x[f] + 1)
            indeg[g] -= 1
            if indeg[g] == 0:
                queue.append(g)
    if seen != len(nodes):
        raise InternalError("dual of the st-graph is cyclic")
    return x, sides


def bars(st: StOrientation) -> BarDrawing:
    """Bar visibility drawing of the skeleton (every skeleton edge direct)."""
    skel = st.skeleton
    if not skel.ends:
        (v,) = skel.vertices
        return BarDrawing({v: Bar(v, 0, 0, 2)}, {})
    xs, sides = dual_abscissae(st)
    lo: dict[int, int] = {}
    hi: dict[int, int] = {}
    vis = {}
    for e, (lf, rf) in sides.items():
        a, b = st.direction[e]
        for v in (a, b):
            lo[v] = min(lo.get(v, xs[lf]), xs[lf])
            hi[v] = max(hi.get(v, xs[rf]), xs[rf])
        vis[e] = Visibility(e, 2 * xs[lf] + 1, st.number[a], st.number[b])
    bar_map = {v: Bar(v, st.number[v], 2 * lo[v], 2 * hi[v]) for v in skel.vertices}
    return BarDrawing(bar_map, vis)
