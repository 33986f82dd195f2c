from __future__ import annotations

from hypothesis import given, settings

from helpers import instances, k4_kite, plane_cycle, run, with_kind
from zpr.augment import augment
from zpr.bar1 import TraversalMap, _choose_traversed, audit_traversals, check_traversals, reinsert_crossings
from zpr.bar_visibility import Bar, BarDrawing, Visibility, bars, choose_st_and_orient, skeleton
from zpr.shapes import DIAMOND, LEFT_WING, RIGHT_WING, FaceShape


def stages(g):
    aug = augment(g)
    st = choose_st_and_orient(skeleton(aug))
    bd = bars(st)
    return aug, st, bd


def fake_kite(dummy: int, u: int, v: int) -> FaceShape:
    return FaceShape(0, dummy, RIGHT_WING, -1, u, v, -2, {}, {})


# ---------------------------------------------------------------------------
# Examples
# ---------------------------------------------------------------------------


def test_no_crossings_leaves_the_drawing_alone():
    aug, st, bd = stages(plane_cycle(5))
    gamma1, tm, shapes = reinsert_crossings(bd, aug, st)
    assert gamma1 == bd and shapes == []
    assert all(w is None for w in tm.traversed.values())


def test_kite_gets_one_direct_and_one_traversing_diagonal():
    res = run(k4_kite())
    (sh,) = res.shapes
    diagonals = list(sh.diagonals.values())
    tags = [res.traversals.traversed[e] for e in diagonals]
    assert sorted(tags, key=lambda w: w is not None)[0] is None
    (w,) = [w for w in tags if w is not None]
    assert w in (sh.u, sh.v)
    recount = audit_traversals(res.gamma1)
    assert {e: recount[e] for e in diagonals} == {e: (() if t is None else (t,)) for e, t in zip(diagonals, tags)}


def test_diamond_configuration():
    res = with_kind(DIAMOND)
    tm = res.traversals
    for sh in res.shapes:
        if sh.kind != DIAMOND:
            continue
        assert tm.traversed[sh.diagonal(sh.u, sh.v)] is None
        assert tm.traversed[sh.diagonal(sh.o, sh.d)] in (sh.u, sh.v)


def test_wings_satisfy_exactly_one_configuration():
    for kind in (LEFT_WING, RIGHT_WING):
        res = with_kind(kind)
        tm = res.traversals
        for sh in res.shapes:
            if sh.kind != kind:
                continue
            first = tm.traversed[sh.diagonal(sh.u, sh.d)] == sh.v
            second = tm.traversed[sh.diagonal(sh.o, sh.v)] == sh.u
            assert first != second


def test_two_bar_traversal_is_flagged():
    bd = BarDrawing(
        {
            0: Bar(0, 0, 0, 10),
            1: Bar(1, 1, 0, 10),
            2: Bar(2, 2, 0, 10),
            3: Bar(3, 3, 0, 10),
        },
        {0: Visibility(0, 5, 0, 3, (1, 2))},
    )
    assert audit_traversals(bd) == {0: (1, 2)}
    assert "traversal count" in check_traversals(bd).kinds()


def test_bar_traversed_twice_is_flagged():
    bd = BarDrawing(
        {0: Bar(0, 0, 0, 10), 1: Bar(1, 1, 0, 10), 2: Bar(2, 2, 0, 10)},
        {0: Visibility(0, 3, 0, 2, (1,)), 1: Visibility(1, 7, 0, 2, (1,))},
    )
    assert "bar traversed twice" in check_traversals(bd).kinds()


def test_recorded_mismatch_is_flagged():
    bd = BarDrawing(
        {0: Bar(0, 0, 0, 10), 1: Bar(1, 1, 0, 10), 2: Bar(2, 2, 0, 10)},
        {0: Visibility(0, 3, 0, 2, ())},
    )
    assert "recorded traversal mismatch" in check_traversals(bd).kinds()


def test_choice_on_a_cycle_of_kites_uses_each_bar_once():
    shapes = [fake_kite(10, 1, 2), fake_kite(11, 2, 3), fake_kite(12, 3, 1)]
    pick = _choose_traversed(shapes)
    assert sorted(pick.values()) == [1, 2, 3]
    assert all(pick[s.dummy] in (s.u, s.v) for s in shapes)


def test_choice_on_a_chain_peels_from_the_ends():
    shapes = [fake_kite(10, 1, 2), fake_kite(11, 2, 3), fake_kite(12, 3, 4), fake_kite(13, 5, 6)]
    pick = _choose_traversed(shapes)
    assert len(set(pick.values())) == 4


def test_traversal_map_indexes():
    tm = TraversalMap({0: None, 1: 5, 2: None})
    assert tm.direct == [0, 2] and tm.traversing == {1: 5} and tm.by_bar == {5: [1]}


# ---------------------------------------------------------------------------
# Properties
# ---------------------------------------------------------------------------


@settings(max_examples=80, deadline=None)
@given(instances)
def test_reinsertion_records_match_a_geometric_recount(g):
    aug, st, bd = stages(g)
    gamma1, tm, shapes = reinsert_crossings(bd, aug, st)
    assert check_traversals(gamma1, tm).ok
    assert set(gamma1.visibilities) == {e for _, _, e in aug.graph.edges}
    assert len(tm.traversing) == len(shapes) == len(g.crossings)
    assert all(len(es) == 1 for es in tm.by_bar.values())
    # skeleton edges stay direct
    recount = audit_traversals(gamma1)
    assert all(recount[e] == () for e in st.skeleton.ends)
    assert gamma1.width <= bd.width + 2 * len(shapes)
    assert gamma1.height == bd.height


@settings(max_examples=60, deadline=None)
@given(instances)
def test_bars_only_grow(g):
    aug, st, bd = stages(g)
    gamma1, _, _ = reinsert_crossings(bd, aug, st)
    for v, b in bd.bars.items():
        c = gamma1.bars[v]
        assert c.z == b.z and c.xR - c.xL >= b.xR - b.xL
