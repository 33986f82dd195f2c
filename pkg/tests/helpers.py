"""Shared builders, oracles and strategies for the test suite."""

from __future__ import annotations

from collections import defaultdict

from hypothesis import strategies as st

from zpr.generate import fixtures, gen
from zpr.graph_model import OnePlaneGraph, from_drawing
from zpr.pipeline import DrawResult, draw

# ---------------------------------------------------------------------------
# Small hand-made instances
# ---------------------------------------------------------------------------

SQUARE = {0: (0, 0), 1: (4, 0), 2: (4, 4), 3: (0, 4)}


def k4_kite() -> OnePlaneGraph:
    return fixtures()["k4_kite"]


def crossing_pair() -> OnePlaneGraph:
    """Two edges (0,2) and (1,3) crossing, nothing else."""
    return from_drawing(SQUARE, [(0, 2), (1, 3)])


def plane_cycle(n: int) -> OnePlaneGraph:
    pts = {0: (0, 0), 1: (4, 0), 2: (4, 4), 3: (0, 4)} if n == 4 else _polygon(n)
    return from_drawing(pts, [(i, (i + 1) % n) for i in range(n)])


def plane_path(n: int) -> OnePlaneGraph:
    return from_drawing({i: (i, i * i % 7) for i in range(n)}, [(i, i + 1) for i in range(n - 1)])


def single_edge() -> OnePlaneGraph:
    return from_drawing({0: (0, 0), 1: (1, 0)}, [(0, 1)])


def single_vertex() -> OnePlaneGraph:
    return OnePlaneGraph(vertices=(0,), edges=(), crossings=(), rotation={0: ()}, outer=None)


def _polygon(n: int) -> dict[int, tuple[int, int]]:
    # integer points in convex position on a parabola-like arc
    return {i: (i, i * i) for i in range(n)}


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------


def euler_faces(g: OnePlaneGraph) -> int:
    """Face count of a connected planarization predicted by Euler's formula."""
    nodes = len(g.vertices) + len(g.crossings)
    pieces = len(g.edges) + 2 * len(g.crossings)
    return 2 - nodes + pieces if pieces else 0  # a lone vertex has no boundary walk


def is_dag_with_unique_ends(vertices, arcs) -> tuple[bool, list[int], list[int]]:
    """Own topological sort: (acyclic, sources, sinks)."""
    out = defaultdict(list)
    indeg = {v: 0 for v in vertices}
    outdeg = {v: 0 for v in vertices}
    for t, h in arcs:
        out[t].append(h)
        indeg[h] += 1
        outdeg[t] += 1
    sources = [v for v in vertices if indeg[v] == 0]
    sinks = [v for v in vertices if outdeg[v] == 0]
    deg = dict(indeg)
    todo = list(sources)
    seen = 0
    while todo:
        v = todo.pop()
        seen += 1
        for w in out[v]:
            deg[w] -= 1
            if deg[w] == 0:
                todo.append(w)
    return seen == len(indeg), sources, sinks


def extends(order, arcs) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    return all(pos[t] < pos[h] for t, h in arcs)


def run(g: OnePlaneGraph, **kw) -> DrawResult:
    return draw(g, **kw)


def corpus(count: int = 30, lo: int = 5, hi: int = 40) -> list[OnePlaneGraph]:
    """Fixtures plus seeded random instances, some sparsified."""
    out = list(fixtures().values())
    for seed in range(count):
        n = lo + seed * 7 % (hi - lo + 1)
        out.append(gen(seed, n, 0.5 + 0.5 * (seed % 2), 0.4 if seed % 3 == 0 else 0.0))
    return out


def with_kind(kind: str, n: int = 12) -> DrawResult:
    """First seeded instance whose pipeline run has a kite face of ``kind``."""
    for seed in range(500):
        res = draw(gen(seed, n, 1.0))
        if any(s.kind == kind for s in res.shapes):
            return res
    raise LookupError(kind)


# ---------------------------------------------------------------------------
# Hypothesis strategies
# ---------------------------------------------------------------------------

instances = st.builds(
    gen,
    seed=st.integers(0, 10**6),
    n=st.integers(1, 30),
    crossing_density=st.sampled_from([0.0, 0.25, 0.5, 1.0]),
    sparsity=st.sampled_from([0.0, 0.3, 0.7]),
)


# ---------------------------------------------------------------------------
# Acceptance reporting
# ---------------------------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def report(number: int, ok: bool, detail: str) -> None:
    """Record and print one PASS/FAIL line for an acceptance criterion."""
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
