"""Brute-force geometric oracle for scenes and bar drawings.

Nothing here reads pipeline bookkeeping: only rectangles, cylinders and the
edge list of the input graph. All arithmetic is exact: coordinates are
scaled to a common integer grid before any comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .bar_visibility import Bar, BarDrawing, Visibility
from .graph_model import OnePlaneGraph, ValidationReport
from .lift import Rect, ZprScene

EdgeSource = Union[OnePlaneGraph, Mapping[int, tuple[int, int]], Iterable[tuple[int, int, int]]]


def edge_map(g: EdgeSource) -> dict[int, tuple[int, int]]:
    """Edge id -> endpoints from a graph, a mapping or ``(u, v, id)`` triples."""
    if isinstance(g, OnePlaneGraph):
        return {e: (u, v) for u, v, e in g.edges}
    if isinstance(g, Mapping):
        return {int(e): (int(u), int(v)) for e, (u, v) in g.items()}
    return {int(e): (int(u), int(v)) for u, v, e in g}


# ---------------------------------------------------------------------------
# Channels between two rectangles
# ---------------------------------------------------------------------------


@dataclass
class _Blockers:
    """Open forbidden boxes for square centres, in scaled integer units."""

    xl: np.ndarray
    xr: np.ndarray
    yl: np.ndarray
    yr: np.ndarray

    def free(self, cx: int, cy: int) -> bool:
        return not bool(np.any((self.xl < cx) & (cx < self.xr) & (self.yl < cy) & (cy < self.yr)))


class _RectTable:
    """Column arrays over all rectangles for vectorized filtering."""

    def __init__(self, rects: Mapping[int, Rect]):
        self.ids = np.array(sorted(rects), dtype=np.int64)
        cols = [[getattr(rects[v], k) for v in self.ids] for k in ("z", "xL", "xR", "yBot", "yTop")]
        self.z, self.xl, self.xr, self.yb, self.yt = (np.array(c, dtype=np.int64) for c in cols)


def _channel(
    table: _RectTable,
    ru: Rect,
    rv: Rect,
    eps: Fraction,
    hints: Iterable[tuple[Fraction, Fraction]] = (),
    exhaustive: bool = True,
) -> tuple[Fraction, Fraction] | None:
    if ru.z == rv.z:
        raise ValueError(f"rectangles of {ru.v} and {rv.v} lie on the same plane")
    hints = list(hints)
    scale = 2 * lcm(eps.denominator, *(q.denominator for h in hints for q in h))
    e = int(eps * scale)
    fx0 = max(ru.xL, rv.xL) * scale + e
    fx1 = min(ru.xR, rv.xR) * scale - e
    fy0 = max(ru.yBot, rv.yBot) * scale + e
    fy1 = min(ru.yTop, rv.yTop) * scale - e
    if fx0 > fx1 or fy0 > fy1:
        return None
    zlo, zhi = sorted((ru.z, rv.z))
    m = (table.z > zlo) & (table.z < zhi)
    b = _Blockers(table.xl[m] * scale - e, table.xr[m] * scale + e, table.yb[m] * scale - e, table.yt[m] * scale + e)
    near = (b.xl < fx1) & (b.xr > fx0) & (b.yl < fy1) & (b.yr > fy0)
    b = _Blockers(b.xl[near], b.xr[near], b.yl[near], b.yr[near])
    for hx, hy in hints:
        cx, cy = int(hx * scale), int(hy * scale)
        if fx0 <= cx <= fx1 and fy0 <= cy <= fy1 and b.free(cx, cy):
            return hx, hy
    if not exhaustive:
        return None
    # the leftmost-lowest free point sits on breakpoints of the arrangement
    xs = np.concatenate(([fx0, fx1], b.xl, b.xr))
    xs = np.unique(xs[(xs >= fx0) & (xs <= fx1)])
    mids = (xs[:-1] + xs[1:]) // 2
    for cx in np.concatenate((xs, mids)):
        act = (b.xl < cx) & (cx < b.xr)
        lo, hi = b.yl[act], b.yr[act]
        order = np.argsort(lo, kind="stable")
        cur = fy0
        for a, c in zip(lo[order].tolist(), hi[order].tolist()):
            if a >= cur:
                break
            cur = max(cur, c)
        if cur <= fy1:
            return Fraction(int(cx), scale), Fraction(int(cur), scale)
    return None


def free_channel(
    rects: Mapping[int, Rect] | Iterable[Rect],
    u: int,
    v: int,
    eps: Fraction = Fraction(1, 4),
) -> tuple[Fraction, Fraction] | None:
    """Centre of a square of half-side ``eps`` joining ``R_u`` and ``R_v``.

    The closed square must lie inside both rectangles' projections, and its
    interior must miss every rectangle whose plane lies strictly between
    theirs. Returns ``None`` when no such centre exists.
    """
    if not isinstance(rects, Mapping):
        rects = {r.v: r for r in rects}
    return _channel(_RectTable(rects), rects[u], rects[v], Fraction(eps))


def square_ok(rects: Mapping[int, Rect], u: int, v: int, centre: tuple[Fraction, Fraction], eps: Fraction) -> bool:
    """Whether one given centre is a valid channel (reference check, no arrays)."""
    ru, rv = rects[u], rects[v]
    cx, cy = centre
    for r in (ru, rv):
        if not (r.xL <= cx - eps and cx + eps <= r.xR and r.yBot <= cy - eps and cy + eps <= r.yTop):
            return False
    zlo, zhi = sorted((ru.z, rv.z))
    for r in rects.values():
        if zlo < r.z < zhi and r.xL < cx + eps and cx - eps < r.xR and r.yBot < cy + eps and cy - eps < r.yTop:
            return False
    return True


# ---------------------------------------------------------------------------
# Scene checks
# ---------------------------------------------------------------------------


def verify_zpr(scene: ZprScene, g: EdgeSource) -> ValidationReport:
    """Disjoint rectangles, a channel for every edge, valid recorded cylinders."""
    rep = ValidationReport()
    rects = scene.rects
    eps = scene.epsilon
    for r in rects.values():
        if not (r.xL < r.xR and r.yBot < r.yTop):
            rep.add("degenerate rectangle", r.v)
    by_z: dict[int, list[Rect]] = {}
    for r in rects.values():
        by_z.setdefault(r.z, []).append(r)
    for rs in by_z.values():
        rs.sort(key=lambda r: (r.xL, r.v))
        for i, a in enumerate(rs):
            for b in rs[i + 1:]:
                if b.xL > a.xR:
                    break
                if a.yBot <= b.yTop and b.yBot <= a.yTop:
                    rep.add("disjointness", a.v, b.v, message=f"disjointness({a.v},{b.v})")
    edges = edge_map(g)
    table = _RectTable(rects)
    for e in sorted(scene.cylinders):
        if e not in edges:
            rep.add("cylinder for unknown edge", e)
    for e in sorted(edges):
        u, v = edges[e]
        if u not in rects or v not in rects:
            rep.add("missing rectangle", e, message=f"edge {e} has an endpoint without rectangle")
            continue
        ru, rv = rects[u], rects[v]
        if ru.z == rv.z:
            rep.add("no visibility", u, v, message=f"no visibility({u},{v}): same plane")
            continue
        cyl = scene.cylinders.get(e)
        hints = []
        if cyl is not None:
            if (cyl.zLow, cyl.zHigh) != tuple(sorted((ru.z, rv.z))):
                rep.add("invalid cylinder", e, message=f"cylinder {e} does not span z({u})..z({v})")
            elif _channel(table, ru, rv, eps, [(cyl.x, cyl.y)], exhaustive=False) is None:
                rep.add("invalid cylinder", e, message=f"cylinder {e} leaves its rectangles or hits another")
            else:
                hints.append((cyl.x, cyl.y))
        if _channel(table, ru, rv, eps, hints) is None:
            rep.add("no visibility", u, v, message=f"no visibility({u},{v})")
    return rep


def section(scene: ZprScene) -> BarDrawing:
    """The cut of ``scene`` by the plane Y = 0.

    Bars are the rectangles meeting the plane; visibilities are the cylinders
    whose cross-section meets it.
    """
    bars = {r.v: Bar(r.v, r.z, r.xL, r.xR) for r in scene.rects.values() if r.yBot <= 0 <= r.yTop}
    vis = {}
    for c in scene.cylinders.values():
        if abs(c.y) <= scene.epsilon:
            if c.x.denominator != 1:
                raise ValueError(f"cylinder {c.edge} has a non-integer section abscissa")
            vis[c.edge] = Visibility(c.edge, int(c.x), c.zLow, c.zHigh)
    return BarDrawing(bars, vis)


def same_section(scene: ZprScene, gamma1: BarDrawing, edges: Iterable[int] | None = None) -> bool:
    """Bars agree exactly and the direct visibilities of ``gamma1`` are the cut cylinders.

    ``edges`` restricts the comparison to the visibilities of those edges
    (the edges of G; augmentation edges have no cylinder).
    """
    cut = section(scene)
    if dict(cut.bars) != dict(gamma1.bars):
        return False
    keep = set(gamma1.visibilities if edges is None else edges)
    direct = {
        e: Visibility(e, s.x, s.zLow, s.zHigh)
        for e, s in gamma1.visibilities.items()
        if not s.traverses and e in keep
    }
    return dict(cut.visibilities) == direct


def one_visible_bars(bars: Mapping[int, Bar], g: EdgeSource, k: int = 1) -> ValidationReport:
    """Check that a bar drawing realizes every edge crossing at most ``k`` bars.

    Each edge gets all positions strictly inside both bars; among them the
    fewest crossings are taken. When k = 1 the single-crossing edges must also
    be matchable to distinct bars.
    """
    rep = ValidationReport()
    ids = np.array(sorted(bars), dtype=np.int64)
    if len(ids) == 0:
        return rep
    z = np.array([bars[v].z for v in ids], dtype=np.int64)
    xl = np.array([bars[v].xL for v in ids], dtype=np.int64)
    xr = np.array([bars[v].xR for v in ids], dtype=np.int64)
    col = {int(v): i for i, v in enumerate(ids)}
    must: dict[int, list[int]] = {}
    for e, (u, v) in sorted(edge_map(g).items()):
        if u not in bars or v not in bars:
            rep.add("missing bar", e)
            continue
        bu, bv = bars[u], bars[v]
        lo, hi = max(bu.xL, bv.xL), min(bu.xR, bv.xR)
        if lo >= hi or bu.z == bv.z:
            rep.add("no vertical segment", e, message=f"bars of {u} and {v} do not overlap")
            continue
        zlo, zhi = sorted((bu.z, bv.z))
        m = (z > zlo) & (z < zhi) & (xl < hi) & (xr > lo)
        cuts = np.unique(np.clip(np.concatenate(([lo, hi], xl[m], xr[m])), lo, hi))
        # doubled midpoints of the elementary open intervals
        mids = cuts[:-1] + cuts[1:]
        cover = (2 * xl[m][None, :] < mids[:, None]) & (mids[:, None] < 2 * xr[m][None, :])
        counts = cover.sum(axis=1)
        best = int(counts.min())
        if best > k:
            rep.add("traversal count", e, best, message=f"edge {e} needs {best} traversals")
            continue
        if best == 1 and k == 1:
            crossed = ids[m][cover[counts == 1].any(axis=0)]
            must[e] = [col[int(w)] for w in crossed]
    if must and k == 1:
        rows = sorted(must)
        data, ind, ptr = [], [], [0]
        for e in rows:
            ind.extend(must[e])
            data.extend([1] * len(must[e]))
            ptr.append(len(ind))
        mat = csr_matrix((data, ind, ptr), shape=(len(rows), len(ids)))
        match = maximum_bipartite_matching(mat, perm_type="column")
        for e, j in zip(rows, match):
            if j < 0:
                rep.add("bar traversed twice", e, message=f"edge {e} cannot get a bar of its own to cross")
    return rep


def verify_one_visible(scene: ZprScene, g: EdgeSource, gamma1: BarDrawing | None = None) -> ValidationReport:
    """The Y = 0 section is a bar 1-visibility drawing of ``g``."""
    rep = ValidationReport()
    for r in scene.rects.values():
        if not r.yBot <= 0 <= r.yTop:
            rep.add("rectangle misses the section plane", r.v)
    cut = section(scene)
    for v in one_visible_bars(cut.bars, g):
        rep.violations.append(v)
    if gamma1 is not None and not same_section(scene, gamma1, edge_map(g)):
        rep.add("section differs from gamma1")
    return rep


def verify_volume(scene: ZprScene, n: int | None = None) -> tuple[Fraction, Fraction]:
    """Bounding-box volume (z extent counted as span + 1) and its ratio to n^3."""
    n = len(scene.rects) if n is None else n
    x0, x1, y0, y1, z0, z1 = scene.bounding_box()
    vol = (x1 - x0) * (y1 - y0) * (z1 - z0 + 1)
    return vol, vol / n**3
