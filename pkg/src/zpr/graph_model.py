"""1-plane graphs given by the rotation system of their planarization.

A crossing between two edges is represented by a dummy vertex of degree 4.
The rotation of a (real or dummy) vertex lists its incident edge pieces in
counterclockwise order; a piece is named by ``(edge id, neighbour)`` where the
neighbour is the other end of the piece inside the planarization.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

Piece = tuple[int, int]
DartRef = tuple[int, int, int]  # (edge id, tail, head)


class ZprError(Exception):
    """Base class for errors raised by the package."""


class InvalidGraphError(ZprError):
    def __init__(self, report: "ValidationReport") -> None:
        super().__init__("; ".join(str(v) for v in report) or "invalid graph")
        self.report = report


class InternalError(ZprError):
    """A construction postcondition failed; this is a bug, not bad input."""


# ---------------------------------------------------------------------------
# Value types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OnePlaneGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]
    crossings: tuple[tuple[int, int, int], ...] = ()
    rotation: Mapping[int, tuple[Piece, ...]] = field(default_factory=dict)
    outer: DartRef | None = None

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def endpoints(self) -> dict[int, tuple[int, int]]:
        return {e: (u, v) for u, v, e in self.edges}

    @cached_property
    def crossing_of(self) -> dict[int, tuple[int, int]]:
        """edge id -> (dummy id, partner edge id)"""
        out = {}
        for e1, e2, x in self.crossings:
            out[e1] = (x, e2)
            out[e2] = (x, e1)
        return out

    @property
    def dummies(self) -> tuple[int, ...]:
        return tuple(x for _, _, x in self.crossings)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "crossings": [list(c) for c in self.crossings],
            "rotation": {str(k): [list(p) for p in v] for k, v in sorted(self.rotation.items())},
            "outerFace": list(self.outer) if self.outer is not None else None,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "OnePlaneGraph":
        try:
            outer = data.get("outerFace")
            return cls(
                vertices=tuple(int(v) for v in data["vertices"]),
                edges=tuple((int(u), int(v), int(e)) for u, v, e in data["edges"]),
                crossings=tuple((int(a), int(b), int(x)) for a, b, x in data.get("crossings", [])),
                rotation={
                    int(k): tuple((int(e), int(w)) for e, w in v)
                    for k, v in data.get("rotation", {}).items()
                },
                outer=tuple(int(t) for t in outer) if outer is not None else None,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed graph JSON: {exc}") from exc

    def relabel(self, vmap: Mapping[int, int], emap: Mapping[int, int] | None = None) -> "OnePlaneGraph":
        """Rename vertex/dummy ids through ``vmap`` and edge ids through ``emap``."""
        emap = emap or {}
        ve = lambda x: vmap.get(x, x)  # noqa: E731
        ee = lambda e: emap.get(e, e)  # noqa: E731
        return OnePlaneGraph(
            vertices=tuple(ve(v) for v in self.vertices),
            edges=tuple((ve(u), ve(v), ee(e)) for u, v, e in self.edges),
            crossings=tuple((ee(a), ee(b), ve(x)) for a, b, x in self.crossings),
            rotation={ve(k): tuple((ee(e), ve(w)) for e, w in p) for k, p in self.rotation.items()},
            outer=None if self.outer is None else (ee(self.outer[0]), ve(self.outer[1]), ve(self.outer[2])),
        )


@dataclass(frozen=True)
class Violation:
    kind: str
    ids: tuple
    message: str = ""

    def __str__(self) -> str:
        ids = ",".join(str(i) for i in self.ids)
        return f"{self.kind}({ids})" + (f": {self.message}" if self.message else "")


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    def add(self, kind: str, *ids, message: str = "") -> None:
        self.violations.append(Violation(kind, tuple(ids), message))

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def to_json(self) -> list[dict]:
        return [{"kind": v.kind, "ids": list(v.ids), "message": v.message} for v in self.violations]


@dataclass(frozen=True)
class Face:
    id: int
    darts: tuple[DartRef, ...]
    is_outer: bool = False

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(t for _, t, _ in self.darts)

    def __len__(self) -> int:
        return len(self.darts)


# ---------------------------------------------------------------------------
# Half-edge structure
# ---------------------------------------------------------------------------


class Embedding:
    """Mutable half-edge structure of a plane multigraph.

    Darts ``2k`` and ``2k+1`` are twins. ``nxt``/``prv`` link the darts leaving
    a node in counterclockwise order. The face of a dart lies to its left.
    """

    def __init__(self) -> None:
        self.tail: list[int] = []
        self.head: list[int] = []
        self.edge: list[int] = []
        self.nxt: list[int] = []
        self.prv: list[int] = []
        self.alive: list[bool] = []
        self.first: dict[int, int] = {}
        self.is_real: dict[int, bool] = {}
        self.outer: int = -1

    # -- construction -----------------------------------------------------

    def add_node(self, x: int, real: bool = True) -> None:
        self.is_real[x] = real

    def new_pair(self, u: int, v: int, e: int) -> int:
        d = len(self.tail)
        self.tail += [u, v]
        self.head += [v, u]
        self.edge += [e, e]
        self.nxt += [d, d + 1]
        self.prv += [d, d + 1]
        self.alive += [True, True]
        return d

    def link_before(self, d: int, ref: int) -> None:
        """Insert dart ``d`` immediately before ``ref`` in ccw order around its tail."""
        p = self.prv[ref]
        self.nxt[p] = d
        self.prv[d] = p
        self.nxt[d] = ref
        self.prv[ref] = d

    def link_last(self, d: int) -> None:
        x = self.tail[d]
        f = self.first.get(x)
        if f is None:
            self.first[x] = d
            self.nxt[d] = self.prv[d] = d
        else:
            self.link_before(d, f)

    def unlink(self, d: int) -> None:
        x = self.tail[d]
        n, p = self.nxt[d], self.prv[d]
        if n == d:
            del self.first[x]
        else:
            self.nxt[p] = n
            self.prv[n] = p
            if self.first[x] == d:
                self.first[x] = n
        self.nxt[d] = self.prv[d] = d

    def kill_pair(self, d: int) -> None:
        d &= ~1
        for h in (d, d + 1):
            if self.alive[h]:
                self.unlink(h)
                self.alive[h] = False
        if self.outer in (d, d + 1):
            self.outer = -1

    def copy(self) -> "Embedding":
        c = Embedding()
        c.tail, c.head, c.edge = self.tail[:], self.head[:], self.edge[:]
        c.nxt, c.prv, c.alive = self.nxt[:], self.prv[:], self.alive[:]
        c.first, c.is_real, c.outer = dict(self.first), dict(self.is_real), self.outer
        return c

    # -- queries ------------------------------------------------------------

    @property
    def nodes(self) -> list[int]:
        return list(self.is_real)

    def darts(self) -> Iterable[int]:
        return (d for d, a in enumerate(self.alive) if a)

    def rotation(self, x: int) -> list[int]:
        f = self.first.get(x)
        if f is None:
            return []
        out = [f]
        d = self.nxt[f]
        while d != f:
            out.append(d)
            d = self.nxt[d]
        return out

    def face_next(self, d: int) -> int:
        return self.prv[d ^ 1]

    def trace_faces(self) -> tuple[list[int], list[list[int]]]:
        """Return ``(face_of_dart, walks)``; dead darts map to -1."""
        face_of = [-1] * len(self.tail)
        walks: list[list[int]] = []
        for d in range(len(self.tail)):
            if not self.alive[d] or face_of[d] >= 0:
                continue
            fid = len(walks)
            walk = []
            x = d
            while face_of[x] < 0:
                face_of[x] = fid
                walk.append(x)
                x = self.face_next(x)
            if x != d:
                raise InternalError("inconsistent rotation system: face walk does not close")
            walks.append(walk)
        return face_of, walks

    def dart_ref(self, d: int) -> DartRef:
        return (self.edge[d], self.tail[d], self.head[d])

    def dart_index(self) -> dict[DartRef, int]:
        return {self.dart_ref(d): d for d in self.darts()}

    def components(self) -> int:
        seen: set[int] = set()
        count = 0
        for x in self.is_real:
            if x in seen:
                continue
            count += 1
            stack = [x]
            seen.add(x)
            while stack:
                y = stack.pop()
                for d in self.rotation(y):
                    h = self.head[d]
                    if h not in seen:
                        seen.add(h)
                        stack.append(h)
        return count

    @classmethod
    def from_graph(cls, g: OnePlaneGraph) -> "Embedding":
        """Build the planarization. Assumes ``validate(g)`` passed."""
        emb = cls()
        for v in g.vertices:
            emb.add_node(v, True)
        for x in g.dummies:
            emb.add_node(x, False)
        index: dict[DartRef, int] = {}
        for u, v, e in g.edges:
            cx = g.crossing_of.get(e)
            pieces = [(u, v)] if cx is None else [(u, cx[0]), (cx[0], v)]
            for a, b in pieces:
                d = emb.new_pair(a, b, e)
                index[(e, a, b)] = d
                index[(e, b, a)] = d + 1
        for x in emb.is_real:
            for e, w in g.rotation.get(x, ()):
                emb.link_last(index[(e, x, w)])
        if g.outer is not None:
            emb.outer = index.get(tuple(g.outer), -1)  # validate reports a missing dart
        return emb

    def to_graph(
        self,
        vertices: Sequence[int],
        crossings: Sequence[tuple[int, int, int]] = (),
        endpoints: Mapping[int, tuple[int, int]] | None = None,
    ) -> OnePlaneGraph:
        """Export back to an :class:`OnePlaneGraph` (edge endpoints inferred if not given)."""
        if endpoints is None:
            endpoints = _infer_endpoints(self)
        rotation = {
            x: tuple((self.edge[d], self.head[d]) for d in self.rotation(x)) for x in self.is_real
        }
        edges = tuple(sorted(((u, v, e) for e, (u, v) in endpoints.items()), key=lambda t: t[2]))
        outer = self.dart_ref(self.outer) if self.outer >= 0 else None
        return OnePlaneGraph(tuple(vertices), edges, tuple(crossings), rotation, outer)


def _infer_endpoints(emb: Embedding) -> dict[int, tuple[int, int]]:
    ends: dict[int, list[int]] = defaultdict(list)
    for d in emb.darts():
        if emb.is_real[emb.tail[d]]:
            ends[emb.edge[d]].append(emb.tail[d])
    return {e: (min(v), max(v)) for e, v in ends.items()}


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate(g: OnePlaneGraph, allow_parallel: bool = False) -> ValidationReport:
    """Check every structural invariant of a 1-plane graph; never raises."""
    rep = ValidationReport()
    vset = set(g.vertices)
    if len(vset) != len(g.vertices):
        rep.add("duplicate vertex id", *sorted(v for v in vset if g.vertices.count(v) > 1))
    if not g.vertices:
        rep.add("empty graph")
    eids = [e for _, _, e in g.edges]
    if len(set(eids)) != len(eids):
        rep.add("duplicate edge id", *sorted({e for e in eids if eids.count(e) > 1}))
    for i in list(vset) + eids:
        if i < 0:
            rep.add("negative id", i)
    ends = {}
    pairs = defaultdict(list)
    for u, v, e in g.edges:
        if u not in vset or v not in vset:
            rep.add("unknown endpoint", e)
        elif u == v:
            rep.add("loop", e)
        ends[e] = (u, v)
        pairs[frozenset((u, v))].append(e)
    if not allow_parallel:
        for es in pairs.values():
            if len(es) > 1:
                rep.add("parallel edges", *sorted(es))

    dummies = [x for _, _, x in g.crossings]
    crossed: dict[int, int] = defaultdict(int)
    for e1, e2, x in g.crossings:
        for e in (e1, e2):
            crossed[e] += 1
            if e not in ends:
                rep.add("unknown crossing edge", e)
        if x in vset:
            rep.add("dummy id collides with vertex id", x)
        if e1 in ends and e2 in ends and set(ends[e1]) & set(ends[e2]):
            rep.add("crossing edges share an endpoint", e1, e2)
        if e1 == e2:
            rep.add("edge crosses itself", e1)
    for e, c in crossed.items():
        if c > 1:
            rep.add("edge crossed twice", e)
    if len(set(dummies)) != len(dummies):
        rep.add("duplicate dummy id", *sorted({x for x in dummies if dummies.count(x) > 1}))
    if not rep.ok:
        return rep

    # expected pieces per planarization node
    expected: dict[int, list[Piece]] = {x: [] for x in list(g.vertices) + dummies}
    for u, v, e in g.edges:
        cx = g.crossing_of.get(e)
        if cx is None:
            expected[u].append((e, v))
            expected[v].append((e, u))
        else:
            x = cx[0]
            expected[u].append((e, x))
            expected[v].append((e, x))
            expected[x] += [(e, u), (e, v)]
    for x, want in expected.items():
        got = list(g.rotation.get(x, ()))
        if sorted(got) != sorted(want):
            rep.add("rotation mismatch", x, message=f"expected pieces {sorted(want)}, got {sorted(got)}")
    for x in g.rotation:
        if x not in expected:
            rep.add("rotation for unknown node", x)
    if not rep.ok:
        return rep
    for _, _, x in g.crossings:
        rot = g.rotation[x]
        if len(rot) != 4:
            rep.add("dummy degree", x)
        elif rot[0][0] != rot[2][0] or rot[1][0] != rot[3][0]:
            rep.add("crossed edge pieces not opposite", x)

    emb = Embedding.from_graph(g)
    try:
        face_of, walks = emb.trace_faces()
    except InternalError:
        rep.add("rotation system is not an embedding")
        return rep
    if emb.components() != 1:
        rep.add("disconnected")
    else:
        nv = len(emb.is_real)
        ne = sum(1 for _ in emb.darts()) // 2
        nf = max(len(walks), 1)
        if nv - ne + nf != 2:
            rep.add("euler", nv, ne, nf, message="V - E + F != 2: rotation system is not planar")
    if g.outer is None:
        if g.edges:
            rep.add("missing outer face")
    else:
        e, a, b = g.outer
        if (e, b) not in set(g.rotation.get(a, ())):
            rep.add("outer face dart not found", e, a, b)
    return rep


def require_valid(g: OnePlaneGraph, allow_parallel: bool = False) -> None:
    rep = validate(g, allow_parallel)
    if not rep.ok:
        raise InvalidGraphError(rep)


# ---------------------------------------------------------------------------
# Faces and homotopy
# ---------------------------------------------------------------------------


def _as_embedding(g) -> Embedding:
    if isinstance(g, Embedding):
        return g
    if isinstance(g, OnePlaneGraph):
        return Embedding.from_graph(g)
    emb = getattr(g, "embedding", None)
    if isinstance(emb, Embedding):
        return emb
    raise TypeError(f"cannot embed {type(g).__name__}")


def faces(g) -> list[Face]:
    """Face walks of the planarization (or of a skeleton); outer face flagged."""
    emb = _as_embedding(g)
    face_of, walks = emb.trace_faces()
    outer = face_of[emb.outer] if emb.outer >= 0 else -1
    return [
        Face(i, tuple(emb.dart_ref(d) for d in w), i == outer) for i, w in enumerate(walks)
    ]


def _edge_darts(emb: Embedding, e: int) -> list[int]:
    return [d for d in emb.darts() if emb.edge[d] == e]


def cycle_sides(emb: Embedding, cycle_darts: Iterable[int]) -> list[set[int]]:
    """Split the real vertices off a closed curve into the regions it bounds.

    ``cycle_darts`` must contain both darts of every piece on the curve. One
    set of real vertices (excluding those on the curve) is returned per region
    touching the curve.
    """
    cycle = set(cycle_darts)
    face_of, walks = emb.trace_faces()
    parent = list(range(len(walks)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for d in emb.darts():
        if d not in cycle:
            a, b = find(face_of[d]), find(face_of[d ^ 1])
            if a != b:
                parent[a] = b
    on_cycle = {emb.tail[d] for d in cycle}
    sides: dict[int, set[int]] = {find(face_of[d]): set() for d in cycle}
    for x, real in emb.is_real.items():
        if x in on_cycle or not real or x not in emb.first:
            continue
        r = find(face_of[emb.first[x]])
        if r in sides:
            sides[r].add(x)
    return list(sides.values())


def homotopic(e1: int, e2: int, g) -> bool:
    """True iff the closed curve formed by parallel edges ``e1``, ``e2`` has a
    side containing no real vertex."""
    emb = _as_embedding(g)
    d1, d2 = _edge_darts(emb, e1), _edge_darts(emb, e2)
    if not d1 or not d2:
        raise ValueError("unknown edge")

    def real_ends(ds):
        return frozenset(emb.tail[d] for d in ds if emb.is_real[emb.tail[d]])

    if e1 == e2 or real_ends(d1) != real_ends(d2) or len(real_ends(d1)) != 2:
        raise ValueError(f"edges {e1} and {e2} are not parallel")
    sides = cycle_sides(emb, d1 + d2)
    return any(not vs for vs in sides)


# ---------------------------------------------------------------------------
# Construction from a straight-line drawing
# ---------------------------------------------------------------------------


def _seg_cross(p, q, r, s):
    """Proper intersection point of segments pq and rs, or None."""

    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    o1, o2, o3, o4 = orient(p, q, r), orient(p, q, s), orient(r, s, p), orient(r, s, q)
    if o1 == 0 or o2 == 0 or o3 == 0 or o4 == 0:
        return None
    if (o1 > 0) == (o2 > 0) or (o3 > 0) == (o4 > 0):
        return None
    t = Fraction(o3, o3 - o4)
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def from_drawing(
    points: Mapping[int, tuple[int, int]],
    edges: Sequence[tuple[int, int]] | Sequence[tuple[int, int, int]],
) -> OnePlaneGraph:
    """Planarize a straight-line drawing with integer coordinates.

    Raises ``ValueError`` if some edge is crossed more than once or passes
    through a vertex. Dummy ids follow the largest vertex id.
    """
    pts = {v: (Fraction(x), Fraction(y)) for v, (x, y) in points.items()}
    elist = [tuple(e) if len(e) == 3 else (e[0], e[1], i) for i, e in enumerate(edges)]
    for u, v, e in elist:
        for w, p in pts.items():
            if w in (u, v):
                continue
            a, b = pts[u], pts[v]
            cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
            if cross == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
                raise ValueError(f"edge {e} passes through vertex {w}")
    next_dummy = max(points) + 1
    crossings = []
    where: dict[int, tuple[int, tuple]] = {}
    for i, (u1, v1, e1) in enumerate(elist):
        for u2, v2, e2 in elist[i + 1:]:
            if {u1, v1} & {u2, v2}:
                continue
            pt = _seg_cross(pts[u1], pts[v1], pts[u2], pts[v2])
            if pt is None:
                continue
            if e1 in where or e2 in where:
                raise ValueError(f"edge crossed twice ({e1} or {e2})")
            x = next_dummy
            next_dummy += 1
            crossings.append((e1, e2, x))
            where[e1] = where[e2] = (x, pt)
            pts[x] = pt

    def angle(a, b):
        return math.atan2(float(b[1] - a[1]), float(b[0] - a[0]))

    inc: dict[int, list[tuple[float, Piece]]] = defaultdict(list)
    for u, v, e in elist:
        if e in where:
            x, pt = where[e]
            inc[u].append((angle(pts[u], pt), (e, x)))
            inc[v].append((angle(pts[v], pt), (e, x)))
            inc[x].append((angle(pt, pts[u]), (e, u)))
            inc[x].append((angle(pt, pts[v]), (e, v)))
        else:
            inc[u].append((angle(pts[u], pts[v]), (e, v)))
            inc[v].append((angle(pts[v], pts[u]), (e, u)))
    rotation = {x: tuple(p for _, p in sorted(inc[x])) for x in list(points) + [c[2] for c in crossings]}
    outer = None
    if elist:
        low = min(points, key=lambda v: (points[v][1], points[v][0]))
        lst = sorted(inc[low])
        _, (e, w) = lst[-1]
        outer = (e, low, w)
    return OnePlaneGraph(
        vertices=tuple(points),
        edges=tuple(elist),
        crossings=tuple(crossings),
        rotation=rotation,
        outer=outer,
    )
