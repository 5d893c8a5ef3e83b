from __future__ import annotations

import random
from fractions import Fraction

import pytest

from rbymatch.errors import CapExceededError
from rbymatch.graph import ColoredGraph, color_profile, cycle_graph
from rbymatch.lpface import (
    PARALLELOGRAM,
    SEGMENT,
    SINGLETON,
    build_lp,
    convex_coefficients,
    dispatch_face,
    minimal_face,
    project_profile,
    solve_lp,
)
from rbymatch.graph import symdiff_components
from rbymatch.oracle import enumerate_matchings, exact_optimum

FIG1 = "RBYBRBYB"
FIG3 = "YBYBYRYRYBRBYRBRBR"


def test_build_lp_single_edge():
    g = ColoredGraph(2, [(0, 1, "R")])
    model = build_lp(g, 1, 0)
    assert len(model.blossom_rows) == 0
    assert model.degree_row_count == 2


def test_build_lp_triangle():
    g = cycle_graph("RBY")
    model = build_lp(g, 0, 0)
    assert len(model.blossom_rows) == 1
    row = model.blossom_rows[0]
    assert row.rhs == 1
    assert row.vertex_mask == 0b111
    assert row.edge_ids(g) == [0, 1, 2]


def test_build_lp_eight_cycle_row_count():
    g = cycle_graph(FIG1)
    model = build_lp(g, 1, 2)
    assert len(model.blossom_rows) == 120  # C(8,3)+C(8,5)+C(8,7)


def test_build_lp_cap():
    g = ColoredGraph(25, [])
    with pytest.raises(CapExceededError):
        build_lp(g, 0, 0)


def test_solve_lp_single_red_edge():
    g = ColoredGraph(2, [(0, 1, "R")])
    sol = solve_lp(build_lp(g, 1, 0))
    assert sol is not None
    assert sol.objective == 1
    assert sol.values == (Fraction(1),)


def test_solve_lp_fig1_value():
    g = cycle_graph(FIG1)
    sol = solve_lp(build_lp(g, 1, 2))
    assert sol is not None
    assert sol.objective == 4


def test_solve_lp_fig1_infeasible():
    g = cycle_graph(FIG1)
    assert solve_lp(build_lp(g, 3, 0)) is None


def test_solve_lp_triangle_blossom_binds():
    # triangle of red edges: without the blossom row, 3/2 would be feasible
    g = cycle_graph("RRR")
    sol = solve_lp(build_lp(g, 1, 0))
    assert sol is not None
    assert sol.objective == 1


def test_solve_lp_satisfies_model_exactly():
    rng = random.Random(10)
    for _ in range(40):
        n = rng.randrange(2, 9)
        edges = []
        for _ in range(rng.randrange(1, 14)):
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                edges.append((u, v, rng.choice("RBY")))
        if not edges:
            continue
        g = ColoredGraph(n, edges)
        kr = rng.randrange(0, 3)
        kb = rng.randrange(0, 3)
        model = build_lp(g, kr, kb)
        sol = solve_lp(model)
        if sol is None:
            assert exact_optimum(g, kr, kb) is None
            continue
        assert sum(sol.values) == sol.objective
        assert project_profile(g, sol) == (kr, kb)
        for v in range(n):
            assert sum(sol.values[e] for e in g.incident(v)) <= 1
        for row in model.blossom_rows:
            ids = row.edge_ids(g)
            assert sum(sol.values[e] for e in ids) <= row.rhs
        opt = exact_optimum(g, kr, kb)
        if opt is not None:
            assert sol.objective >= len(opt)


def test_project_profile_cases():
    g = cycle_graph(FIG3)
    assert project_profile(g, frozenset()) == (0, 0)
    m0 = frozenset(range(0, 18, 2))
    assert project_profile(g, m0) == (1, 2)


def test_minimal_face_singleton():
    g = ColoredGraph(2, [(0, 1, "R")])
    model = build_lp(g, 1, 0)
    sol = solve_lp(model)
    face = minimal_face(g, model, sol)
    assert face.classification == SINGLETON
    assert face.vertex_matchings == (frozenset({0}),)


def test_minimal_face_segment_four_cycle():
    g = cycle_graph("RBRB")
    model = build_lp(g, 1, 1)
    sol = solve_lp(model)
    assert sol is not None
    assert sol.values == (Fraction(1, 2),) * 4
    face = minimal_face(g, model, sol)
    assert face.classification == SEGMENT
    assert set(face.vertex_matchings) == {frozenset({0, 2}), frozenset({1, 3})}
    coeffs = convex_coefficients(g, face, sol)
    assert coeffs == [Fraction(1, 2), Fraction(1, 2)]
    # segment endpoints are adjacent: one alternating component between them
    comps = symdiff_components(g, *face.vertex_matchings)
    assert len(comps) == 1 and comps[0].is_cycle


def _two_c4_instance():
    edges = [(i, (i + 1) % 4, "RY"[i % 2]) for i in range(4)]
    edges += [(4 + i, 4 + (i + 1) % 4, "BY"[i % 2]) for i in range(4)]
    return ColoredGraph(8, edges)


def test_minimal_face_parallelogram():
    g = _two_c4_instance()
    model = build_lp(g, 1, 1)
    sol = solve_lp(model)
    assert sol is not None
    assert sol.objective == 4
    face = minimal_face(g, model, sol)
    assert face.classification == PARALLELOGRAM
    assert set(face.projected_vertices) == {(2, 2), (2, 0), (0, 0), (0, 2)}
    # cyclic order: v1 - v2 == v4 - v3 on the projections as well
    p = face.projected_vertices
    assert (p[0][0] - p[1][0], p[0][1] - p[1][1]) == (
        p[3][0] - p[2][0],
        p[3][1] - p[2][1],
    )
    coeffs = convex_coefficients(g, face, sol)
    assert coeffs is not None and sum(coeffs) == 1 and all(c >= 0 for c in coeffs)
    # consecutive face vertices are adjacent: their symdiff is one component
    vs = face.vertex_matchings
    for i in range(4):
        a, b = vs[i], vs[(i + 1) % 4]
        comps = symdiff_components(g, a, b)
        assert len(comps) == 1


def test_face_vertex_sizes_close():
    g = _two_c4_instance()
    model = build_lp(g, 1, 1)
    sol = solve_lp(model)
    face = minimal_face(g, model, sol)
    sizes = [len(m) for m in face.vertex_matchings]
    assert max(sizes) - min(sizes) <= 2


def test_dispatch_face_singleton_collapse():
    # both perfect matchings share the profile (1, 0): a mid-segment optimum
    # projects onto a single point and must dispatch as a singleton
    from rbymatch.lpface import RationalSolution

    g = cycle_graph("RYYR")
    model = build_lp(g, 1, 0)
    mid = RationalSolution(values=(Fraction(1, 2),) * 4, objective=Fraction(2))
    face = minimal_face(g, model, mid)
    assert face.classification == SEGMENT
    assert set(face.projected_vertices) == {(1, 0)}
    dispatch = dispatch_face(face, 1, 0)
    assert dispatch.classification == SINGLETON
    assert len(dispatch.vertex_matchings[0]) == 2


def test_dispatch_face_keeps_full_rank_faces():
    g = _two_c4_instance()
    model = build_lp(g, 1, 1)
    sol = solve_lp(model)
    face = minimal_face(g, model, sol)
    dispatch = dispatch_face(face, 1, 1)
    assert dispatch.classification == PARALLELOGRAM
    assert dispatch.vertex_matchings == face.vertex_matchings


def test_minimal_face_random_convexity():
    rng = random.Random(31)
    done = 0
    while done < 60:
        n = rng.randrange(2, 9)
        edges = []
        for _ in range(rng.randrange(1, 12)):
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                edges.append((u, v, rng.choice("RBY")))
        if not edges:
            continue
        g = ColoredGraph(n, edges)
        ms = [m for m in enumerate_matchings(g) if m]
        if not ms:
            continue
        target = ms[rng.randrange(len(ms))]
        prof = color_profile(g, target)
        model = build_lp(g, prof.red, prof.blue)
        sol = solve_lp(model)
        assert sol is not None  # the matching itself is feasible
        face = minimal_face(g, model, sol)
        assert 1 <= len(face.vertex_matchings) <= 4
        coeffs = convex_coefficients(g, face, sol)
        assert coeffs is not None
        assert sum(coeffs) == 1
        # sizes along the face stay within the structural bounds
        sizes = [len(m) for m in face.vertex_matchings]
        spread = 2 if face.classification == PARALLELOGRAM else 1
        assert max(sizes) - min(sizes) <= spread
        done += 1
