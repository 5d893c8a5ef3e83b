from __future__ import annotations

import random

import pytest

from rbymatch.errors import InvariantError
from rbymatch.graph import (
    ColoredGraph,
    color_profile,
    cycle_graph,
    symdiff_components,
    validate_matching,
)
from rbymatch.oracle import best_profile_size, exact_optimum
from rbymatch.union import combine_two_matchings, glue_components


def _two_cycles_instance() -> ColoredGraph:
    edges = []
    for i in range(8):  # cycle 1: RYRYRYRY
        edges.append((i, (i + 1) % 8, "RY"[i % 2]))
    for i in range(8):  # cycle 2: BYBYBYBY
        edges.append((8 + i, 8 + (i + 1) % 8, "BY"[i % 2]))
    return ColoredGraph(16, edges)


def test_glue_single_augmenting_pair():
    g = ColoredGraph(4, [(0, 1, "R"), (2, 3, "B")])
    comps = symdiff_components(g, {0}, {1})
    glued = glue_components(comps, graph=g)
    assert glued.colors == ("R", "B")
    assert glued.edge_map == (0, 1)
    assert glued.dummy_count == 0


def test_glue_single_leftover_path_gets_dummy():
    g = ColoredGraph(2, [(0, 1, "R")])
    comps = symdiff_components(g, {0}, set())
    glued = glue_components(comps, graph=g)
    assert glued.colors == ("R", "Y")
    assert glued.edge_map == (0, None)
    assert glued.dummy_count == 1


def test_glue_two_cycles():
    g = _two_cycles_instance()
    # matching of all red/blue edges: even positions within each cycle
    m0 = frozenset(i for i in range(8) if i % 2 == 0) | frozenset(
        8 + i for i in range(8) if i % 2 == 0
    )
    m1 = frozenset(i for i in range(8) if i % 2 == 1) | frozenset(
        8 + i for i in range(8) if i % 2 == 1
    )
    comps = symdiff_components(g, m0, m1)
    assert [c.kind for c in comps] == ["even_cycle", "even_cycle"]
    glued = glue_components(comps, graph=g)
    assert len(glued.colors) == 16
    assert glued.dummy_count == 0
    assert [b[2] for b in glued.block_spans] == [True, True]


def test_combine_identical_matchings():
    g = cycle_graph("RBYBRBYB")
    m = frozenset({0, 2, 4, 6})
    got = combine_two_matchings(g, m, m, 2, 0)
    assert got == m


def test_combine_two_cycles_tightness():
    g = _two_cycles_instance()
    m0 = frozenset(i for i in range(8) if i % 2 == 0) | frozenset(
        8 + i for i in range(8) if i % 2 == 0
    )
    m1 = frozenset(i for i in range(8) if i % 2 == 1) | frozenset(
        8 + i for i in range(8) if i % 2 == 1
    )
    got = combine_two_matchings(g, m0, m1, 2, 2)
    assert validate_matching(g, got)
    prof = color_profile(g, got)
    assert prof.red == 2 and prof.blue in (1, 2)
    assert len(got) == 6  # |m1| - 2; the oracle confirms optimality below
    assert best_profile_size(g, [(2, 2), (2, 1)]) == 6


def test_combine_requires_on_segment():
    g = cycle_graph("RBYBRBYB")
    with pytest.raises(ValueError):
        combine_two_matchings(g, {0, 2, 4, 6}, {1, 3, 5, 7}, 3, 3)


def _random_graph_and_matchings(rng: random.Random, n_max=12):
    n = rng.randrange(2, n_max)
    edges = []
    for _ in range(rng.randrange(1, 2 * n)):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.append((u, v, rng.choice("RBY")))
    g = ColoredGraph(n, edges)

    def rand_matching():
        ids = list(range(g.edge_count))
        rng.shuffle(ids)
        used, out = set(), set()
        for e in ids:
            if rng.randrange(3) == 0:
                continue
            u, v = g.endpoints(e)
            if u in used or v in used:
                continue
            used |= {u, v}
            out.add(e)
        return frozenset(out)

    return g, rand_matching(), rand_matching()


def _segment_points(p0, p1):
    from math import gcd

    dx, dy = p1[0] - p0[0], p1[1] - p0[1]
    if dx == 0 and dy == 0:
        return [p0]
    gg = gcd(abs(dx), abs(dy))
    return [(p0[0] + dx * k // gg, p0[1] + dy * k // gg) for k in range(gg + 1)]


def test_combine_random_contract():
    rng = random.Random(2025)
    trials = 0
    while trials < 500:
        g, ma, mb = _random_graph_and_matchings(rng)
        if len(ma) < len(mb):
            ma, mb = mb, ma
        pa = color_profile(g, ma).rb
        pb = color_profile(g, mb).rb
        pts = _segment_points(pa, pb)
        kr, kb = pts[rng.randrange(len(pts))]
        got = combine_two_matchings(g, ma, mb, kr, kb)
        assert validate_matching(g, got)
        prof = color_profile(g, got)
        assert prof.red == kr
        assert prof.blue in (kb - 1, kb)
        assert len(got) >= len(mb) - 2
        union_graph_edges = ma | mb
        # acyclic unions (every symdiff component a path) strengthen the bound
        comps = symdiff_components(g, ma - mb, mb - ma)
        if all(not c.is_cycle for c in comps):
            assert len(got) >= len(mb) - 1
        trials += 1


def _structured_union(rng: random.Random):
    """Disjoint alternating components biased toward same-color runs,
    forcing contraction cascades, joins, and the no-yellow recursion."""
    edges = []
    m0, m1 = set(), set()
    base = 0
    palette = rng.choice(["RB", "RBY", "RRBB", "RRBBYY"])
    for _ in range(rng.randrange(1, 5)):
        length = rng.randrange(1, 9)
        is_cycle = length >= 4 and length % 2 == 0 and rng.randrange(2) == 0
        n = length if is_cycle else length + 1
        for i in range(length):
            u = base + i
            v = base + (i + 1) % n if is_cycle else base + i + 1
            edges.append((u, v, rng.choice(palette)))
            (m0 if i % 2 == 0 else m1).add(len(edges) - 1)
        base += n
    return ColoredGraph(base, edges), frozenset(m0), frozenset(m1)


def test_combine_structured_components_torture():
    rng = random.Random(616)
    trials = 0
    while trials < 800:
        g, ma, mb = _structured_union(rng)
        if len(ma) < len(mb):
            ma, mb = mb, ma
        pa = color_profile(g, ma).rb
        pb = color_profile(g, mb).rb
        pts = _segment_points(pa, pb)
        kr, kb = pts[rng.randrange(len(pts))]
        got = combine_two_matchings(g, ma, mb, kr, kb)
        assert validate_matching(g, got)
        prof = color_profile(g, got)
        assert prof.red == kr and prof.blue in (kb - 1, kb)
        assert len(got) >= len(mb) - 2
        comps = symdiff_components(g, ma - mb, mb - ma)
        if all(not c.is_cycle for c in comps):
            assert len(got) >= len(mb) - 1
        trials += 1


def test_combine_output_at_most_oracle():
    rng = random.Random(77)
    for _ in range(60):
        g, ma, mb = _random_graph_and_matchings(rng, n_max=9)
        if len(ma) < len(mb):
            ma, mb = mb, ma
        pa = color_profile(g, ma).rb
        pb = color_profile(g, mb).rb
        pts = _segment_points(pa, pb)
        kr, kb = pts[rng.randrange(len(pts))]
        got = combine_two_matchings(g, ma, mb, kr, kb)
        prof = color_profile(g, got)
        oracle_best = exact_optimum(g, prof.red, prof.blue)
        assert oracle_best is not None and len(oracle_best) >= len(got)
