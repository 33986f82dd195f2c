"""Acceptance criteria 1-8, one PASS/FAIL line each.

The instance corpus is the fixture set plus 200 seeded random instances with
5 <= n <= 100; the pipeline runs once per instance and the results are shared.
"""

from __future__ import annotations

import gc
import json
import random
import time
from fractions import Fraction

import pytest

from helpers import report
from zpr.bar1 import audit_traversals
from zpr.cli import main
from zpr.generate import RUNNING_EXAMPLE_SIGMA1, RUNNING_EXAMPLE_SIGMA2, fixtures, gen, named_order
from zpr.lift import check_acyclic, direct_scene
from zpr.pipeline import draw
from zpr.verify import section, verify_volume, verify_zpr

# Largest bounding-box volume / n^3 measured on seeds 0-4 at n = 25, 50, 100, 200
# (n = 25, seed 3). Regression tolerance is 10 %.
VOLUME_C = Fraction(32, 5)
VOLUME_SIZES = (25, 50, 100, 200)
TIME_SIZES = (2000, 4000, 8000)
TIME_REPEATS = 3
TIME_SEEDS = (0, 1, 2, 3)


def seeded_instances():
    for seed in range(200):
        n = 5 + seed * 37 % 96
        density = (0.25, 0.5, 0.75, 1.0)[seed % 4]
        sparsity = 0.4 if seed % 5 == 0 else 0.0
        yield f"seed{seed}", gen(seed, n, density, sparsity)


@pytest.fixture(scope="module")
def corpus():
    graphs = list(fixtures().items()) + list(seeded_instances())
    return [(name, g, draw(g)) for name, g in graphs]


# ---------------------------------------------------------------------------
# 1. End-to-end correctness
# ---------------------------------------------------------------------------


def test_end_to_end_draw_verify(tmp_path):
    graphs = list(fixtures().items()) + list(seeded_instances())
    failures = []
    start = time.perf_counter()
    for name, g in graphs:
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(g.to_json()))
        if main(["draw", str(p), "-o", str(tmp_path / f"{name}.scene.json"), "--verify"]) != 0:
            failures.append(name)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    report(1, ok, f"{len(graphs) - len(failures)}/{len(graphs)} instances pass draw --verify in {elapsed:.1f}s")
    assert not failures, failures
    assert elapsed < 60


# ---------------------------------------------------------------------------
# 2. Both orientations are acyclic
# ---------------------------------------------------------------------------


def test_orientations_acyclic(corpus):
    bad = [name for name, _, res in corpus if check_acyclic(res.o1) or check_acyclic(res.o2)]
    rng = random.Random(2024)
    fuzzed = 0
    for _ in range(1000):
        g = gen(rng.randrange(10**6), rng.randint(1, 30), rng.choice((0.25, 0.5, 1.0)), rng.choice((0.0, 0.3)))
        res = draw(g)
        fuzzed += 1
        if check_acyclic(res.o1) or check_acyclic(res.o2):
            bad.append(f"fuzz:{g.n}")
    report(2, not bad, f"O1 and O2 acyclic on {len(corpus)} corpus + {fuzzed} fuzzed instances, {len(bad)} cyclic")
    assert not bad


# ---------------------------------------------------------------------------
# 3. Direct subscene with preliminary rectangles
# ---------------------------------------------------------------------------


def test_direct_subscene_valid(corpus):
    bad = []
    for name, _, res in corpus:
        sub = direct_scene(res.gamma1, res.traversals)
        ends = res.augmented.graph.endpoints
        if not verify_zpr(sub, {e: ends[e] for e in sub.cylinders}).ok:
            bad.append(name)
    report(3, not bad, f"direct-edge subscene verifies on {len(corpus) - len(bad)}/{len(corpus)} instances")
    assert not bad


# ---------------------------------------------------------------------------
# 4. Traversal bounds, recomputed from geometry
# ---------------------------------------------------------------------------


def test_traversal_bounds(corpus):
    bad = []
    worst_edge = worst_bar = 0
    for name, _, res in corpus:
        recount = audit_traversals(res.gamma1)
        recorded = {e: (() if w is None else (w,)) for e, w in res.traversals.traversed.items()}
        per_bar: dict[int, int] = {}
        for crossed in recount.values():
            for w in crossed:
                per_bar[w] = per_bar.get(w, 0) + 1
        worst_edge = max([worst_edge, *map(len, recount.values())])
        worst_bar = max([worst_bar, *per_bar.values()])
        if recount != recorded:
            bad.append(name)
    ok = not bad and worst_edge <= 1 and worst_bar <= 1
    report(4, ok, f"recount matches records; max per visibility {worst_edge}, max per bar {worst_bar}")
    assert ok, bad


# ---------------------------------------------------------------------------
# 5. y-assignment contract
# ---------------------------------------------------------------------------


def test_y_assignment(corpus):
    g = fixtures()["fig6"]
    res = draw(g, named_order(RUNNING_EXAMPLE_SIGMA1), named_order(RUNNING_EXAMPLE_SIGMA2))
    r = res.scene.rects
    s, t, h = named_order(("s", "t", "h"))
    got = (r[t].yTop, r[s].yTop, r[h].yBot, r[s].yBot)
    caption = got == (8, 1, -8, -1)
    bad = []
    for name, _, res in corpus:
        r = res.scene.rects
        if not all(r[u].yTop > r[v].yTop for u, v in res.o1.arcs.values()):
            bad.append(name)
        elif not all(r[u].yBot < r[v].yBot for u, v in res.o2.arcs.values()):
            bad.append(name)
    ok = caption and not bad
    report(5, ok, f"running example (yTop t, yTop s, yBot h, yBot s) = {got}; monotone on {len(corpus) - len(bad)}/{len(corpus)}")
    assert ok, bad


# ---------------------------------------------------------------------------
# 6. Volume bound
# ---------------------------------------------------------------------------


def test_volume_bound():
    ratios = {}
    for n in VOLUME_SIZES:
        ratios[n] = max(verify_volume(draw(gen(seed, n, 0.5)).scene, n)[1] for seed in range(5))
    worst = max(ratios.values())
    ok = worst <= Fraction(11, 10) * VOLUME_C
    detail = ", ".join(f"n={n}: {float(r):.2f}" for n, r in ratios.items())
    report(6, ok, f"volume/n^3 {detail}; limit 1.1*C = {float(Fraction(11, 10) * VOLUME_C):.2f}")
    assert ok


# ---------------------------------------------------------------------------
# 7. Linear time
# ---------------------------------------------------------------------------


def best_cpu_time(g, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        # timeit convention: collect first, no collector pauses inside; CPU time
        # of this process so other tenants of the machine do not count
        gc.collect()
        gc.disable()
        try:
            start = time.process_time()
            draw(g)
            best = min(best, time.process_time() - start)
        finally:
            gc.enable()
    return best


def test_linear_time():
    # per-run noise is about 30 %, so each size sums several instances
    times = {n: sum(best_cpu_time(gen(seed, n, 0.5), TIME_REPEATS) for seed in TIME_SEEDS) for n in TIME_SIZES}
    ratios = [times[b] / times[a] for a, b in zip(TIME_SIZES, TIME_SIZES[1:])]
    ok = all(q <= 3 for q in ratios)
    detail = ", ".join(f"n={n}: {t:.2f}s" for n, t in times.items())
    report(7, ok, f"{detail} (sum of {len(TIME_SEEDS)} instances); doubling ratios {', '.join(f'{q:.2f}' for q in ratios)}")
    assert ok


# ---------------------------------------------------------------------------
# 8. Section at Y = 0 equals the dumped bar 1-visibility drawing
# ---------------------------------------------------------------------------


def test_section_equals_gamma1(corpus):
    bad = []
    for name, g, res in corpus:
        dumped = json.loads(json.dumps(res.stage_json("gamma1")))
        keep = {e for *_, e in g.edges}
        expected_bars = sorted(dumped["bars"], key=lambda b: b["v"])
        expected_vis = sorted(
            (v for v in dumped["visibilities"] if not v["traverses"] and v["edge"] in keep),
            key=lambda v: v["edge"],
        )
        cut = json.loads(json.dumps(section(res.scene).to_json()))
        if sorted(cut["bars"], key=lambda b: b["v"]) != expected_bars:
            bad.append(name)
        elif sorted(cut["visibilities"], key=lambda v: v["edge"]) != expected_vis:
            bad.append(name)
    report(8, not bad, f"Y=0 section equals dumped gamma1 on {len(corpus) - len(bad)}/{len(corpus)} instances")
    assert not bad
