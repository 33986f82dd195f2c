"""Reinsertion of crossing pairs into a bar visibility drawing.

Each kite face gets one fresh column next to its channel. One diagonal of the
kite becomes a direct visibility in that column; the other runs in an
existing column and traverses exactly one intermediate bar. The traversed
bars are chosen so that no bar is traversed twice.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .augment import AugmentedGraph
from .bar_visibility import Bar, BarDrawing, StOrientation, Visibility
from .graph_model import InternalError, ValidationReport
from .shapes import LEFT_WING, RIGHT_WING, FaceShape, classify_faces


@dataclass(frozen=True)
class TraversalMap:
    """edge id -> traversed bar (``None`` for a direct visibility)."""

    traversed: Mapping[int, int | None]

    @property
    def by_bar(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = defaultdict(list)
        for e, w in self.traversed.items():
            if w is not None:
                out[w].append(e)
        return dict(out)

    @property
    def direct(self) -> list[int]:
        return sorted(e for e, w in self.traversed.items() if w is None)

    @property
    def traversing(self) -> dict[int, int]:
        return {e: w for e, w in self.traversed.items() if w is not None}

    def to_json(self) -> dict:
        return {str(e): w for e, w in sorted(self.traversed.items())}


def _choose_traversed(shapes: list[FaceShape]) -> dict[int, int]:
    """Pick one intermediate bar per kite with no bar picked twice.

    Every bar is an intermediate of at most two kite faces (its left and its
    right face), so the kites form paths and cycles over the bars; peel the
    paths from their ends and walk the cycles.
    """
    inc: dict[int, list[int]] = defaultdict(list)
    cand = {}
    for sh in shapes:
        cand[sh.dummy] = (sh.u, sh.v)
        inc[sh.u].append(sh.dummy)
        inc[sh.v].append(sh.dummy)
    if any(len(ks) > 2 for ks in inc.values()):
        raise InternalError("a bar is intermediate in more than two kite faces")
    left = set(cand)
    deg = {v: len(ks) for v, ks in inc.items()}
    pick: dict[int, int] = {}

    def assign(k: int, w: int) -> None:
        pick[k] = w
        left.discard(k)
        for v in cand[k]:
            deg[v] -= 1

    leaves = sorted(v for v, c in deg.items() if c == 1)
    while leaves:
        w = leaves.pop(0)
        if deg[w] != 1:
            continue
        (k,) = [k for k in inc[w] if k in left]
        assign(k, w)
        other = cand[k][0] if cand[k][1] == w else cand[k][1]
        if deg[other] == 1:
            leaves.append(other)
    for k in sorted(left):
        if k not in left:
            continue
        w = min(cand[k])
        while k in left:
            assign(k, w)
            w = cand[k][0] if cand[k][1] == w else cand[k][1]
            nxt = [j for j in inc[w] if j in left]
            if not nxt:
                break
            k = nxt[0]
    return pick


def reinsert_crossings(
    bd: BarDrawing, aug: AugmentedGraph, st: StOrientation
) -> tuple[BarDrawing, TraversalMap, list[FaceShape]]:
    """Extend bars so every crossing pair of G' gets a visibility."""
    shapes = classify_faces(st, aug.graph.endpoints)
    traversed = {e: None for e in bd.visibilities}
    if not shapes:
        return bd, TraversalMap(traversed), shapes
    pick = _choose_traversed(shapes)
    col = {v: (b.xL // 2, b.xR // 2) for v, b in bd.bars.items()}

    # boundary column of each kite face
    boundary = {}
    for sh in shapes:
        if sh.kind == RIGHT_WING:
            boundary[sh.dummy] = col[sh.u][0]
        elif sh.kind == LEFT_WING:
            boundary[sh.dummy] = col[sh.u][1]
        else:
            boundary[sh.dummy] = col[sh.u][1]
            if col[sh.v][0] != col[sh.u][1]:
                raise InternalError(f"diamond {sh.dummy}: intermediate bars do not meet")
    points = sorted(boundary.values())
    groups: dict[int, list[FaceShape]] = defaultdict(list)
    for sh in shapes:
        groups[boundary[sh.dummy]].append(sh)
    fresh = {}
    for p, members in groups.items():
        members.sort(key=lambda sh: (st.number[sh.o], sh.dummy))
        base = p + bisect_left(points, p)
        for r, sh in enumerate(members):
            fresh[sh.dummy] = base + r

    def shift_col(c: int) -> int:
        return c + bisect_right(points, c)

    lo = {v: c[0] + bisect_right(points, c[0]) for v, c in col.items()}
    hi = {v: c[1] + bisect_left(points, c[1]) for v, c in col.items()}
    vis = {}
    for e, s in bd.visibilities.items():
        vis[e] = Visibility(e, 2 * shift_col(s.x // 2) + 1, s.zLow, s.zHigh)

    z = st.number

    def add(e: int, c: int, a: int, b: int, w: int | None) -> None:
        lo_z, hi_z = sorted((z[a], z[b]))
        vis[e] = Visibility(e, 2 * c + 1, lo_z, hi_z, () if w is None else (w,))
        traversed[e] = w

    for sh in shapes:
        p, c, w = boundary[sh.dummy], fresh[sh.dummy], pick[sh.dummy]
        o, u, v, d = sh.o, sh.u, sh.v, sh.d
        if sh.kind == RIGHT_WING:
            lo[w] = min(lo[w], c)
            trav_col = shift_col(p)
        elif sh.kind == LEFT_WING:
            hi[w] = max(hi[w], c + 1)
            trav_col = shift_col(p - 1)
        else:
            hi[u] = max(hi[u], c + 1)
            lo[v] = min(lo[v], c)
            add(sh.diagonal(u, v), c, u, v, None)
            add(sh.diagonal(o, d), shift_col(p - 1) if w == u else shift_col(p), o, d, w)
            continue
        if w == v:
            add(sh.diagonal(o, v), c, o, v, None)
            add(sh.diagonal(u, d), trav_col, u, d, v)
        else:
            add(sh.diagonal(u, d), c, u, d, None)
            add(sh.diagonal(o, v), trav_col, o, v, u)

    new_bars = {v: Bar(v, b.z, 2 * lo[v], 2 * hi[v]) for v, b in bd.bars.items()}
    return BarDrawing(new_bars, vis), TraversalMap(traversed), shapes


# ---------------------------------------------------------------------------
# Independent recount
# ---------------------------------------------------------------------------


def audit_traversals(gamma1: BarDrawing) -> dict[int, tuple[int, ...]]:
    """Recompute from raw geometry which bars each visibility crosses."""
    ids = np.array(sorted(gamma1.bars))
    if len(ids) == 0:
        return {}
    xl = np.array([gamma1.bars[v].xL for v in ids])
    xr = np.array([gamma1.bars[v].xR for v in ids])
    zz = np.array([gamma1.bars[v].z for v in ids])
    out = {}
    for e, s in gamma1.visibilities.items():
        hit = (xl < s.x) & (s.x < xr) & (zz > s.zLow) & (zz < s.zHigh)
        out[e] = tuple(int(v) for v in ids[hit])
    return out


def check_traversals(gamma1: BarDrawing, tm: TraversalMap | None = None, k: int = 1) -> ValidationReport:
    """Sweep recount against the records and the per-visibility / per-bar budget."""
    rep = ValidationReport()
    recount = audit_traversals(gamma1)
    per_bar: dict[int, int] = defaultdict(int)
    for e, crossed in sorted(recount.items()):
        if len(crossed) > k:
            rep.add("traversal count", e, len(crossed), message=f"traversal count {len(crossed)}")
        for w in crossed:
            per_bar[w] += 1
        if tuple(gamma1.visibilities[e].traverses) != crossed:
            rep.add("recorded traversal mismatch", e)
        if tm is not None:
            rec = tm.traversed.get(e)
            if (() if rec is None else (rec,)) != crossed:
                rep.add("traversal map mismatch", e)
    for w, c in sorted(per_bar.items()):
        if c > 1:
            rep.add("bar traversed twice", w, c)
    bars_at: dict[int, list[Bar]] = defaultdict(list)
    for b in gamma1.bars.values():
        if not b.xL < b.xR:
            rep.add("degenerate bar", b.v)
        bars_at[b.z].append(b)
    for z, bs in bars_at.items():
        bs.sort(key=lambda b: b.xL)
        for a, b in zip(bs, bs[1:]):
            if b.xL < a.xR:
                rep.add("overlapping bars", a.v, b.v)
    for e, s in gamma1.visibilities.items():
        ends = (bars_at.get(s.zLow, []), bars_at.get(s.zHigh, []))
        if not all(any(b.xL < s.x < b.xR for b in bs) for bs in ends):
            rep.add("visibility not anchored", e)
    return rep
