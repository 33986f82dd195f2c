"""Augmentation of a 1-plane graph to a maximal kite-complete multigraph.

Every crossing pair ends up surrounded by four uncrossed edges routed next
to the crossing (an empty kite), and every face receives chords until none
can be added without a crossing, a homotopic duplicate, or a parallel copy
of a crossed edge.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping

from .graph_model import (
    Embedding,
    InternalError,
    OnePlaneGraph,
    ValidationReport,
    ZprError,
    cycle_sides,
    homotopic,
    require_valid,
)

FROM_G = "from-G"
KITE = "kite-completion"
AUGMENT = "augmentation-only"


class UnsupportedGraphError(ZprError):
    """The input is a valid 1-plane graph outside what the pipeline handles."""


@dataclass(frozen=True)
class AugmentedGraph:
    graph: OnePlaneGraph
    origin: Mapping[int, str]
    kite_sides: Mapping[int, tuple[int, int, int, int]] = field(default_factory=dict)
    rerouted: tuple[int, ...] = ()

    def edges_of(self, kind: str) -> list[int]:
        return sorted(e for e, k in self.origin.items() if k == kind)

    def to_json(self) -> dict:
        data = self.graph.to_json()
        data["origin"] = {str(e): k for e, k in sorted(self.origin.items())}
        data["kiteSides"] = {str(x): list(s) for x, s in sorted(self.kite_sides.items())}
        data["rerouted"] = list(self.rerouted)
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "AugmentedGraph":
        return cls(
            graph=OnePlaneGraph.from_json(data),
            origin={int(e): k for e, k in data["origin"].items()},
            kite_sides={int(x): tuple(s) for x, s in data.get("kiteSides", {}).items()},
            rerouted=tuple(data.get("rerouted", ())),
        )


class _Augmenter:
    def __init__(self, g: OnePlaneGraph) -> None:
        self.g = g
        self.emb = Embedding.from_graph(g)
        self.ends: dict[int, tuple[int, int]] = dict(g.endpoints)
        self.origin: dict[int, str] = {e: FROM_G for e in self.ends}
        self.crossing: dict[int, tuple[int, int]] = {x: (a, b) for a, b, x in g.crossings}
        self.next_id = max(self.ends, default=-1) + 1
        self.pending: dict[frozenset, list[int]] = defaultdict(list)
        self.rerouted: list[int] = []

    # -- rerouting ----------------------------------------------------------

    def _neighbours(self, x: int) -> list[int]:
        return [self.emb.head[d] for d in self.emb.rotation(x)]

    def _side_pairs(self, x: int) -> list[frozenset]:
        nb = self._neighbours(x)
        return [frozenset((nb[i], nb[(i + 1) % 4])) for i in range(4)]

    def reroute(self) -> None:
        """Uncross every crossed edge whose endpoints form a side of another kite.

        The removed edge reappears later as that kite's side.
        """
        owners: dict[frozenset, set[int]] = defaultdict(set)
        for x in self.crossing:
            for p in self._side_pairs(x):
                owners[p].add(x)
        queue = sorted(self.crossing)
        while queue:
            x = queue.pop()
            if x not in self.crossing:
                continue
            for e in self.crossing[x]:
                pair = frozenset(self.ends[e])
                if owners[pair] - {x}:
                    for p in self._side_pairs(x):
                        owners[p].discard(x)
                    self._uncross(x, e)
                    self.pending[pair].append(e)
                    self.rerouted.append(e)
                    queue = sorted(self.crossing)
                    break

    def _uncross(self, x: int, drop: int) -> None:
        emb = self.emb
        keep = self.crossing[x][0] if self.crossing[x][1] == drop else self.crossing[x][1]
        del self.crossing[x]
        outs = emb.rotation(x)
        keep_out = [d for d in outs if emb.edge[d] == keep]
        (p_x, q_x) = (keep_out[0] ^ 1, keep_out[1] ^ 1)  # darts p->x and q->x
        p, q = emb.tail[p_x], emb.tail[q_x]
        nd = emb.new_pair(p, q, keep)
        emb.link_before(nd, p_x)
        emb.link_before(nd + 1, q_x)
        for d in outs:
            emb.kill_pair(d)
        del emb.is_real[x]
        del self.ends[drop]
        del self.origin[drop]

    # -- face completion ----------------------------------------------------

    def _crossed_pairs(self) -> set[frozenset]:
        return {frozenset(self.ends[e]) for pair in self.crossing.values() for e in pair}

    def _new_edge(self, a: int, b: int, kind: str) -> int:
        pair = frozenset((a, b))
        if self.pending.get(pair):
            e = self.pending[pair].pop(0)
            self.origin[e] = FROM_G
        else:
            e = self.next_id
            self.next_id += 1
            self.origin[e] = kind
        self.ends[e] = (a, b) if a < b else (b, a)
        return e

    def complete_faces(self) -> None:
        emb = self.emb
        crossed = self._crossed_pairs()
        _, walks = emb.trace_faces()
        stack = list(reversed(walks))
        while stack:
            walk = stack.pop()
            stack.extend(reversed(self._process(walk, crossed)))

    def _process(self, walk: list[int], crossed: set[frozenset]) -> list[list[int]]:
        """Cut ears off one face; return sub-walks that still need work."""
        emb = self.emb
        real = emb.is_real
        k = len(walk)
        if k <= 3:
            return []
        dart = list(walk)
        vert = [emb.tail[d] for d in walk]
        nxt = [(i + 1) % k for i in range(k)]
        prv = [(i - 1) % k for i in range(k)]
        alive = [True] * k
        cnt: dict[int, int] = defaultdict(int)
        for v in vert:
            cnt[v] += 1
        size = k

        def ear_ok(i: int) -> bool:
            if size < 4 or not alive[i]:
                return False
            a, b = vert[prv[i]], vert[nxt[i]]
            if a == b or not real[a] or not real[b] or frozenset((a, b)) in crossed:
                return False
            return size - 3 > (cnt[a] - 1) + (cnt[b] - 1)

        def cut(i: int) -> None:
            nonlocal size
            p, q = prv[i], nxt[i]
            a, b = vert[p], vert[q]
            e = self._new_edge(a, b, KITE if not real[vert[i]] else AUGMENT)
            c = emb.new_pair(a, b, e)
            emb.link_before(c, dart[prv[p]] ^ 1)
            emb.link_before(c + 1, dart[i] ^ 1)
            dart[p] = c
            alive[i] = False
            nxt[p], prv[q] = q, p
            cnt[vert[i]] -= 1
            size -= 1

        while True:
            tips = [i for i in range(k) if alive[i] and not real[vert[i]]]
            tips += [i for i in range(k) if alive[i] and real[vert[i]]]
            queue = list(reversed(tips))
            queued = set(queue)
            progress = False
            while queue and size > 3:
                i = queue.pop()
                queued.discard(i)
                if ear_ok(i):
                    p, q = prv[i], nxt[i]
                    cut(i)
                    progress = True
                    for j in (q, p):
                        if j not in queued:
                            queue.append(j)
                            queued.add(j)
            if size <= 3:
                return []
            if not progress:
                break
        # No ear left: look for any admissible chord.
        order = []
        i = next(j for j in range(k) if alive[j])
        for _ in range(size):
            order.append(i)
            i = nxt[i]
        m = len(order)
        for s in range(m):
            for t in range(s + 2, m):
                if s == 0 and t == m - 1:
                    continue
                a, b = vert[order[s]], vert[order[t]]
                if a == b or not real[a] or not real[b] or frozenset((a, b)) in crossed:
                    continue
                inner1 = [vert[order[j]] for j in range(s + 1, t)]
                inner2 = [vert[order[j]] for j in list(range(t + 1, m)) + list(range(0, s))]
                if all(v in (a, b) for v in inner1) or all(v in (a, b) for v in inner2):
                    continue
                e = self._new_edge(a, b, AUGMENT)
                c = emb.new_pair(a, b, e)
                ps, pt = order[s], order[t]
                emb.link_before(c, dart[order[s - 1]] ^ 1)
                emb.link_before(c + 1, dart[order[t - 1]] ^ 1)
                walk_a = [dart[order[j]] for j in range(s, t)] + [c + 1]
                walk_b = [dart[order[j]] for j in list(range(t, m)) + list(range(0, s))] + [c]
                del ps, pt
                return [walk_a, walk_b]
        return []

    # -- result -------------------------------------------------------------

    def choose_outer(self) -> None:
        emb = self.emb
        face_of, walks = emb.trace_faces()
        if not walks:
            return  # a single vertex
        clean = [all(emb.is_real[emb.tail[d]] for d in w) for w in walks]
        if emb.outer >= 0 and emb.alive[emb.outer] and clean[face_of[emb.outer]]:
            return
        for w, ok in zip(walks, clean):
            if ok:
                emb.outer = min(w)
                return
        raise UnsupportedGraphError(
            "every face of the augmented planarization touches a crossing; "
            "no crossing-free outer face is available"
        )

    def kite_sides(self) -> dict[int, tuple[int, int, int, int]]:
        emb = self.emb
        out = {}
        for x in sorted(self.crossing):
            sides = []
            for d in emb.rotation(x):
                back = d ^ 1  # neighbour -> x
                side = emb.face_next(emb.face_next(back))
                if emb.face_next(side) != back:
                    raise InternalError(f"kite around dummy {x} is not complete")
                sides.append(emb.edge[side])
            out[x] = tuple(sides)
        return out

    def result(self) -> AugmentedGraph:
        leftover = [e for es in self.pending.values() for e in es]
        if leftover:
            raise InternalError(f"rerouted edges {leftover} were not reinserted")
        emb = self.emb
        crossings = tuple(sorted((a, b, x) for x, (a, b) in self.crossing.items()))
        g1 = emb.to_graph(self.g.vertices, crossings, self.ends)
        return AugmentedGraph(g1, dict(self.origin), self.kite_sides(), tuple(sorted(self.rerouted)))


def augment(g: OnePlaneGraph, allow_parallel: bool = False, *, validated: bool = False) -> AugmentedGraph:
    """Complete every crossing to an empty kite and saturate all faces.

    ``allow_parallel`` admits multigraph input such as an earlier result;
    ``validated`` skips the input check when the caller already ran it.
    """
    if not validated:
        require_valid(g, allow_parallel)
    aug = _Augmenter(g)
    aug.reroute()
    aug.complete_faces()
    aug.choose_outer()
    return aug.result()


# ---------------------------------------------------------------------------
# Independent checks
# ---------------------------------------------------------------------------


def check_kites(a: AugmentedGraph) -> ValidationReport:
    """Every crossing pair spans an empty kite; parallel classes are uncrossed
    and pairwise non-homotopic."""
    rep = ValidationReport()
    g = a.graph
    emb = Embedding.from_graph(g)
    by_pair: dict[frozenset, list[int]] = defaultdict(list)
    for u, v, e in g.edges:
        by_pair[frozenset((u, v))].append(e)
    for e1, e2, x in g.crossings:
        quad = list(g.endpoints[e1]) + list(g.endpoints[e2])
        a0, c0 = g.endpoints[e1]
        b0, d0 = g.endpoints[e2]
        cycle_pairs = [frozenset(p) for p in ((a0, b0), (b0, c0), (c0, d0), (d0, a0))]
        cycle_darts = []
        for p in cycle_pairs:
            cand = [e for e in by_pair.get(p, []) if e not in g.crossing_of]
            if not cand:
                rep.add("kite side missing", x, *sorted(p))
                break
            # take the copy routed next to the crossing when there are several
            pick = next((e for e in cand if e in a.kite_sides.get(x, ())), cand[0])
            cycle_darts += [d for d in emb.darts() if emb.edge[d] == pick]
        else:
            sides = cycle_sides(emb, cycle_darts)
            if not any(not s for s in sides):
                rep.add("kite not empty", x, *sorted(quad))
    for p, es in by_pair.items():
        if len(es) < 2:
            continue
        for e in es:
            if e in g.crossing_of:
                rep.add("crossed parallel edge", e)
        for i, e in enumerate(es):
            for f in es[i + 1:]:
                if e in g.crossing_of or f in g.crossing_of:
                    continue
                if homotopic(e, f, emb):
                    rep.add("homotopic parallel edges", e, f)
    return rep


def check_maximality(a: AugmentedGraph | OnePlaneGraph) -> ValidationReport:
    """Report every chord that could still be added inside a face.

    Brute force: each pair of real corners of each face is tried by inserting
    the chord into a copy of the embedding and testing it against every
    existing parallel edge.
    """
    g = a.graph if isinstance(a, AugmentedGraph) else a
    rep = ValidationReport()
    base = Embedding.from_graph(g)
    by_pair: dict[frozenset, list[int]] = defaultdict(list)
    for u, v, e in g.edges:
        by_pair[frozenset((u, v))].append(e)
    _, walks = base.trace_faces()
    probe = max(g.endpoints, default=0) + 1
    for fid, walk in enumerate(walks):
        m = len(walk)
        for s in range(m):
            for t in range(s + 1, m):
                a0, b0 = base.tail[walk[s]], base.tail[walk[t]]
                if a0 == b0 or not base.is_real[a0] or not base.is_real[b0]:
                    continue
                existing = by_pair.get(frozenset((a0, b0)), [])
                if any(e in g.crossing_of for e in existing):
                    continue
                emb = base.copy()
                c = emb.new_pair(a0, b0, probe)
                emb.link_before(c, walk[s - 1] ^ 1)
                emb.link_before(c + 1, walk[t - 1] ^ 1)
                if any(homotopic(probe, e, emb) for e in existing):
                    continue
                rep.add("addable chord", fid, a0, b0)
    return rep
