from __future__ import annotations

import json
import random
from collections import Counter

import pytest
from hypothesis import given, settings

from helpers import crossing_pair, euler_faces, instances, k4_kite, plane_cycle, single_edge
from zpr.generate import fixtures
from zpr.graph_model import (
    Embedding,
    InvalidGraphError,
    OnePlaneGraph,
    faces,
    from_drawing,
    homotopic,
    require_valid,
    validate,
)


def _replace(g: OnePlaneGraph, **kw) -> OnePlaneGraph:
    data = dict(vertices=g.vertices, edges=g.edges, crossings=g.crossings, rotation=g.rotation, outer=g.outer)
    data.update(kw)
    return OnePlaneGraph(**data)


def _bigon(inner: str) -> OnePlaneGraph:
    """Parallel edges 0 and 1 between vertices 0 and 1; vertex 3 hangs outside.

    ``inner`` is "edge" (a third parallel edge inside) or "vertex" (vertex 2
    inside, attached to 0).
    """
    if inner == "edge":
        return OnePlaneGraph(
            vertices=(0, 1, 3),
            edges=((0, 1, 0), (0, 1, 1), (0, 1, 2), (0, 3, 3)),
            crossings=(),
            rotation={0: ((0, 1), (2, 1), (1, 1), (3, 3)), 1: ((1, 0), (2, 0), (0, 0)), 3: ((3, 0),)},
            outer=(3, 0, 3),
        )
    return OnePlaneGraph(
        vertices=(0, 1, 2, 3),
        edges=((0, 1, 0), (0, 1, 1), (0, 2, 2), (0, 3, 3)),
        crossings=(),
        rotation={0: ((0, 1), (2, 2), (1, 1), (3, 3)), 1: ((1, 0), (0, 0)), 2: ((2, 0),), 3: ((3, 0),)},
        outer=(3, 0, 3),
    )


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------


def test_k4_kite_is_valid():
    g = k4_kite()
    assert validate(g).ok
    assert len(g.crossings) == 1 and g.n == 4 and len(g.edges) == 6


def test_running_example_is_valid():
    assert validate(fixtures()["fig6"]).ok


def test_edge_crossed_twice_is_reported():
    g = k4_kite()
    (e1, e2, x), = g.crossings
    other = next(e for _, _, e in g.edges if e not in (e1, e2))
    bad = _replace(g, crossings=g.crossings + ((e1, other, x + 1),))
    assert "edge crossed twice" in validate(bad).kinds()


def test_disconnected_input_is_reported():
    g = from_drawing({0: (0, 0), 1: (1, 0), 2: (5, 5), 3: (6, 5)}, [(0, 1), (2, 3)])
    assert "disconnected" in validate(g).kinds()


def test_loop_and_parallel_are_reported():
    g = single_edge()
    loop = _replace(g, edges=g.edges + ((0, 0, 7),))
    assert "loop" in validate(loop).kinds()
    par = _bigon("edge")
    assert "parallel edges" in validate(par).kinds()
    assert validate(par, allow_parallel=True).ok


def test_broken_rotation_is_reported():
    g = k4_kite()
    v = g.vertices[0]
    rot = dict(g.rotation)
    rot[v] = rot[v][:-1]
    assert not validate(_replace(g, rotation=rot)).ok


def test_dummy_with_adjacent_crossed_pieces_is_reported():
    g = k4_kite()
    (_, _, x), = g.crossings
    rot = dict(g.rotation)
    p = rot[x]
    rot[x] = (p[0], p[2], p[1], p[3])
    assert not validate(_replace(g, rotation=rot)).ok


def test_require_valid_raises_with_report():
    g = k4_kite()
    bad = _replace(g, outer=(999, 0, 1))
    with pytest.raises(InvalidGraphError) as info:
        require_valid(bad)
    assert len(info.value.report) >= 1


# ---------------------------------------------------------------------------
# faces
# ---------------------------------------------------------------------------


def test_plane_four_cycle_has_two_quadrilateral_faces():
    fs = faces(plane_cycle(4))
    assert sorted(len(f) for f in fs) == [4, 4]
    assert sum(f.is_outer for f in fs) == 1


def test_kite_planarization_face_count_matches_euler():
    g = k4_kite()
    fs = faces(g)
    assert len(fs) == euler_faces(g) == 5
    assert sorted(len(f) for f in fs) == [3, 3, 3, 3, 4]


def test_single_edge_has_one_face():
    assert len(faces(single_edge())) == 1


@settings(max_examples=60, deadline=None)
@given(instances)
def test_faces_partition_the_darts(g):
    fs = faces(g)
    used = Counter(d for f in fs for d in f.darts)
    pieces = len(g.edges) + 2 * len(g.crossings)
    assert len(used) == 2 * pieces and set(used.values()) <= {1}
    assert len(fs) == euler_faces(g)
    assert sum(f.is_outer for f in fs) == (1 if pieces else 0)


@settings(max_examples=60, deadline=None)
@given(instances)
def test_dummy_and_piece_counts(g):
    assert len(g.dummies) == len(g.crossings)
    emb = Embedding.from_graph(g)
    assert len(list(emb.darts())) == 2 * (len(g.edges) + 2 * len(g.crossings))


# ---------------------------------------------------------------------------
# homotopic
# ---------------------------------------------------------------------------


def test_empty_bigon_is_homotopic():
    g = _bigon("edge")
    assert homotopic(0, 2, g) and homotopic(2, 1, g)


def test_bigon_with_vertex_inside_is_not_homotopic():
    g = _bigon("vertex")
    assert validate(g, allow_parallel=True).ok
    assert not homotopic(0, 1, g)


def test_bigon_with_only_edge_interiors_inside_is_homotopic():
    # the region between 0 and 1 holds edge 2 but no vertex
    assert homotopic(0, 1, _bigon("edge"))


def test_homotopic_rejects_non_parallel_edges():
    with pytest.raises(ValueError):
        homotopic(0, 3, _bigon("edge"))


# ---------------------------------------------------------------------------
# serialization and relabeling
# ---------------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(instances)
def test_json_round_trip(g):
    assert OnePlaneGraph.from_json(json.loads(json.dumps(g.to_json()))) == g


@settings(max_examples=60, deadline=None)
@given(instances)
def test_validity_survives_relabeling(g):
    rng = random.Random(len(g.edges))
    nodes = list(g.vertices) + list(g.dummies)
    fresh = rng.sample(range(10 * len(nodes) + 10), len(nodes))
    edges = [e for _, _, e in g.edges]
    fresh_e = rng.sample(range(10 * len(edges) + 10), len(edges))
    h = g.relabel(dict(zip(nodes, fresh)), dict(zip(edges, fresh_e)))
    assert validate(h).ok


def test_from_drawing_rejects_doubly_crossed_edge():
    pts = {0: (0, 0), 1: (10, 0), 2: (3, -3), 3: (3, 3), 4: (6, -3), 5: (6, 3)}
    with pytest.raises(ValueError):
        from_drawing(pts, [(0, 1), (2, 3), (4, 5)])


def test_crossing_pair_builds_one_dummy():
    g = crossing_pair()
    assert validate(g).ok and len(g.crossings) == 1
