"""Seeded random 1-plane instances and a small fixture corpus."""

from __future__ import annotations

import itertools
import random

from .graph_model import OnePlaneGraph, from_drawing

# ---------------------------------------------------------------------------
# Random triangulation
# ---------------------------------------------------------------------------


def _triangulation(rng: random.Random, n: int) -> tuple[dict[int, list[int]], list[tuple[int, int, int]]]:
    """Rotation lists and inner ccw faces of a random stacked triangulation."""
    if n == 1:
        return {0: []}, []
    if n == 2:
        return {0: [1], 1: [0]}, []
    rot = {0: [1, 2], 1: [2, 0], 2: [0, 1]}
    faces = [(0, 1, 2)]
    for k in range(3, n):
        i = rng.randrange(len(faces))
        a, b, c = faces[i]
        for x, after in ((a, b), (b, c), (c, a)):
            r = rot[x]
            r.insert(r.index(after) + 1, k)
        rot[k] = [a, b, c]
        faces[i] = (a, b, k)
        faces.append((b, c, k))
        faces.append((c, a, k))
    return rot, faces


def gen(seed: int, n: int, crossing_density: float, sparsity: float = 0.0) -> OnePlaneGraph:
    """A valid 1-plane graph on ``n`` vertices.

    A random stacked triangulation is built first. Disjoint pairs of adjacent
    inner triangles are then matched, and a ``crossing_density`` fraction of
    them receives the crossing diagonal, turning the pair into a kite. With
    ``sparsity`` > 0, that fraction of the removable uncrossed edges (not on
    the outer triangle, not needed for connectivity) is deleted.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= crossing_density <= 1.0:
        raise ValueError("crossing_density must lie in [0, 1]")
    if not 0.0 <= sparsity <= 1.0:
        raise ValueError("sparsity must lie in [0, 1]")
    rng = random.Random(seed)
    rot, faces = _triangulation(rng, n)
    adj = {frozenset((u, w)) for u, r in rot.items() for w in r}

    # match adjacent inner triangles that can host a crossing
    by_edge: dict[frozenset, list[int]] = {}
    for i, (a, b, c) in enumerate(faces):
        for x, y in ((a, b), (b, c), (c, a)):
            by_edge.setdefault(frozenset((x, y)), []).append(i)
    order = list(range(len(faces)))
    rng.shuffle(order)
    used = [False] * len(faces)
    pairs = []
    for i in order:
        if used[i]:
            continue
        a, b, c = faces[i]
        opts = []
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            for j in by_edge[frozenset((x, y))]:
                if j != i and not used[j]:
                    (d,) = set(faces[j]) - {x, y}
                    if frozenset((z, d)) not in adj:
                        opts.append((x, y, z, d, j))
        if opts:
            x, y, z, d, j = opts[rng.randrange(len(opts))]
            used[i] = used[j] = True
            adj.add(frozenset((z, d)))
            pairs.append((x, y, z, d))
    chosen = pairs[: round(crossing_density * len(pairs))]

    # edges as rotation pieces; a node id stands for a neighbour or a dummy
    eid: dict[frozenset, int] = {}
    for u in range(n):
        for w in rot[u]:
            eid.setdefault(frozenset((u, w)), len(eid))
    pieces = {u: [[eid[frozenset((u, w))], w] for w in rot[u]] for u in range(n)}
    crossings = []
    crossed = set()
    for x, y, z, d in chosen:
        # face (x, y, z) is ccw and (y, x, d) is its neighbour across x-y
        dummy = n + len(crossings)
        e_ab = eid[frozenset((x, y))]
        e_cd = len(eid)
        eid[frozenset((z, d))] = e_cd
        for p in pieces[x]:
            if p[1] == y and p[0] == e_ab:
                p[1] = dummy
        for p in pieces[y]:
            if p[1] == x and p[0] == e_ab:
                p[1] = dummy
        for v, after in ((z, x), (d, y)):
            r = pieces[v]
            k = next(i for i, p in enumerate(r) if p[1] == after)
            r.insert(k + 1, [e_cd, dummy])
        pieces[dummy] = [[e_ab, y], [e_cd, z], [e_ab, x], [e_cd, d]]
        crossings.append((e_ab, e_cd, dummy))
        crossed.update((e_ab, e_cd))

    ends = {e: tuple(sorted(p)) for p, e in eid.items()}
    if sparsity > 0 and n > 3:
        outer = {eid[frozenset(p)] for p in ((0, 1), (1, 2), (2, 0))}
        parent = list(range(n))

        def find(v: int) -> int:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        # keep a random spanning tree, drop a fraction of the rest
        candidates = sorted(ends)
        rng.shuffle(candidates)
        tree = set()
        for e in candidates:
            a, b = (find(v) for v in ends[e])
            if a != b:
                parent[a] = b
                tree.add(e)
        drop = {e for e in candidates if e not in tree and e not in crossed and e not in outer and rng.random() < sparsity}
        for v in pieces:
            pieces[v] = [p for p in pieces[v] if p[0] not in drop]
        ends = {e: uv for e, uv in ends.items() if e not in drop}

    # compact edge ids
    new_id = {e: i for i, e in enumerate(sorted(ends))}
    edges = tuple((ends[e][0], ends[e][1], new_id[e]) for e in sorted(ends))
    rotation = {v: tuple((new_id[e], w) for e, w in pieces[v]) for v in sorted(pieces)}
    outer_dart = (new_id[eid[frozenset((0, 1))]], 1, 0) if n >= 2 else None
    return OnePlaneGraph(
        vertices=tuple(range(n)),
        edges=edges,
        crossings=tuple((new_id[a], new_id[b], x) for a, b, x in crossings),
        rotation=rotation,
        outer=outer_dart,
    )


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

K5_POINTS = {0: (8, 3), 1: (8, 6), 2: (7, 5), 3: (6, 5), 4: (0, 8)}
K6_POINTS = {0: (1, 11), 1: (0, 2), 2: (2, 6), 3: (5, 5), 4: (12, 7), 5: (2, 4)}


def _complete(points: dict[int, tuple[int, int]]) -> OnePlaneGraph:
    return from_drawing(points, list(itertools.combinations(sorted(points), 2)))


def fixtures() -> dict[str, OnePlaneGraph]:
    """Named instances used by tests, demos and acceptance runs."""
    k4 = from_drawing(
        {0: (0, 0), 1: (4, 0), 2: (4, 4), 3: (0, 4)},
        [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)],
    )
    return {
        "k4_kite": k4,
        "k5": _complete(K5_POINTS),
        "k6": _complete(K6_POINTS),
        "fig6": running_example(),
    }


# Eight-vertex running example: s, t, a, b, e, f, g, h with five crossings.
RUNNING_EXAMPLE_NAMES = {0: "s", 1: "t", 2: "a", 3: "b", 4: "e", 5: "f", 6: "g", 7: "h"}
RUNNING_EXAMPLE_SIGMA1 = ("t", "a", "h", "f", "b", "e", "g", "s")
RUNNING_EXAMPLE_SIGMA2 = ("h", "t", "g", "e", "b", "f", "a", "s")


def running_example() -> OnePlaneGraph:
    """The named eight-vertex instance; s-t is its smallest outer edge."""
    edges = (
        (0, 1, 0), (0, 7, 1), (0, 2, 2), (1, 2, 3), (1, 4, 4), (1, 5, 5), (1, 7, 6), (2, 7, 7),
        (2, 6, 8), (2, 4, 9), (7, 5, 10), (7, 4, 11), (7, 3, 12), (7, 6, 13), (4, 6, 14),
        (4, 3, 15), (4, 5, 16), (6, 3, 17), (0, 6, 18), (0, 5, 19), (2, 5, 20), (3, 5, 21),
        (2, 3, 22),
    )  # fmt: skip
    rotation = {
        0: ((0, 1), (19, 9), (1, 7), (18, 8), (2, 2)),
        1: ((3, 2), (4, 10), (5, 5), (6, 9), (0, 0)),
        2: ((2, 0), (7, 8), (8, 6), (22, 12), (9, 4), (20, 10), (3, 1)),
        3: ((12, 7), (21, 11), (15, 4), (22, 12), (17, 6)),
        4: ((4, 10), (9, 2), (14, 12), (15, 3), (11, 11), (16, 5)),
        5: ((10, 7), (19, 9), (5, 1), (20, 10), (16, 4), (21, 11)),
        6: ((8, 2), (18, 8), (13, 7), (17, 3), (14, 12)),
        7: ((1, 0), (6, 9), (10, 5), (11, 11), (12, 3), (13, 6), (7, 8)),
        8: ((7, 2), (18, 0), (7, 7), (18, 6)),
        9: ((6, 7), (19, 0), (6, 1), (19, 5)),
        10: ((4, 4), (20, 5), (4, 1), (20, 2)),
        11: ((11, 4), (21, 3), (11, 7), (21, 5)),
        12: ((14, 6), (22, 3), (14, 4), (22, 2)),
    }
    return OnePlaneGraph(
        vertices=tuple(range(8)),
        edges=edges,
        crossings=((7, 18, 8), (6, 19, 9), (4, 20, 10), (11, 21, 11), (14, 22, 12)),
        rotation=rotation,
        outer=(0, 1, 0),
    )


def named_order(names: tuple[str, ...]) -> tuple[int, ...]:
    """Vertex ids of the running example listed by name."""
    ids = {name: v for v, name in RUNNING_EXAMPLE_NAMES.items()}
    return tuple(ids[x] for x in names)
