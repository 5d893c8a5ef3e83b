from __future__ import annotations

import random
from fractions import Fraction

import pytest

from rbymatch.cycles import (
    find_good_path,
    is_proper_cycle,
    lift_cycle_matching,
    near_perfect_matchings,
    quasi_matching_from_good_path,
    reduce_to_proper,
    segment_integer_points,
    solve_even_cycle,
    solve_fractional,
    solve_path_or_cycle,
)
from rbymatch.graph import (
    CycleOrPath,
    color_profile,
    cycle_graph,
    even_cycle_from_string,
    path_from_string,
    profile_of_colors,
)
from rbymatch.oracle import exact_optimum

FIG1 = "RBYBRBYB"
FIG3 = "YBYBYRYRYBRBYRBRBR"
FIG5 = "YBYBYRYRYR"
TIGHT_PATH = "BRYRYBYBYRYRB"


def _check(colors: str, positions, size_min: int, rb):
    comp = even_cycle_from_string(colors)
    assert len(positions) >= size_min
    # no two cyclically adjacent positions
    n = len(colors)
    for p in positions:
        assert (p + 1) % n not in positions
    assert comp.profile_of(positions).rb == rb


def test_near_perfect_count():
    for ell in (2, 3, 5, 8):
        ms = list(near_perfect_matchings(2 * ell))
        assert len(ms) == ell * ell
        for a, b, pos in ms:
            assert len(pos) == ell - 1
            assert (b - a) % 2 == 1


def test_solve_even_cycle_fig1():
    got = solve_even_cycle(FIG1, 1, 2)
    _check(FIG1, got, 3, (1, 2))


def test_solve_even_cycle_fig3():
    got = solve_even_cycle(FIG3, 3, 3)
    _check(FIG3, got, 8, (3, 3))


def test_solve_even_cycle_endpoints():
    comp = even_cycle_from_string(FIG1)
    p0 = comp.even_profile().rb
    assert solve_even_cycle(FIG1, *p0) == frozenset(comp.even_edges())
    p1 = comp.odd_profile().rb
    assert solve_even_cycle(FIG1, *p1) == frozenset(comp.odd_edges())


def test_solve_even_cycle_no_yellow_drops_one_blue():
    got = solve_even_cycle("RBRB", 1, 1)
    _check("RBRB", got, 1, (1, 0))


def test_solve_even_cycle_rejects_off_segment():
    with pytest.raises(ValueError):
        solve_even_cycle(FIG1, 2, 1)


def test_solve_path_tightness_instance():
    comp = path_from_string(TIGHT_PATH)
    got = solve_path_or_cycle(comp, 3, 2)
    prof = profile_of_colors(TIGHT_PATH[p] for p in got)
    assert prof.red == 3 and prof.blue in (1, 2)
    assert len(got) >= 5


def test_solve_path_even_path_trivial():
    got = solve_path_or_cycle(path_from_string("RB"), 1, 0)
    assert got == frozenset({0})


def test_solve_path_delegates_even_cycle():
    comp = even_cycle_from_string(FIG1)
    got = solve_path_or_cycle(comp, 1, 2)
    _check(FIG1, got, 3, (1, 2))


def test_solve_fractional_fig5():
    got = solve_fractional(even_cycle_from_string(FIG5), 1, Fraction(2, 3))
    comp = even_cycle_from_string(FIG5)
    assert len(got) >= 4
    assert comp.profile_of(got).rb in {(1, 0), (1, 1)}


def test_solve_fractional_integral_delegates():
    got = solve_fractional(even_cycle_from_string(FIG1), 1, Fraction(2))
    _check(FIG1, got, 3, (1, 2))


def test_solve_fractional_endpoint():
    comp = even_cycle_from_string(FIG1)
    p0 = comp.even_profile().rb
    assert solve_fractional(comp, p0[0], Fraction(p0[1])) == frozenset(comp.even_edges())


def test_reduce_to_proper_examples():
    reduced, kr, kb, journal = reduce_to_proper("RRBYBY", 2, 1)
    assert reduced is not None
    assert reduced.colors == ("B", "Y", "B", "Y")
    assert (kr, kb) == (1, 1)
    assert len(journal) == 1

    reduced, kr, kb, journal = reduce_to_proper("RBYB", 1, 1)
    assert reduced is not None and reduced.colors == ("R", "B", "Y", "B")
    assert len(journal) == 0

    reduced, kr, kb, journal = reduce_to_proper("RBRB", 1, 1)
    assert reduced is not None and reduced.colors == ("R", "B", "R", "B")
    assert len(journal) == 0


def test_reduce_to_proper_whole_cycle_balanced():
    reduced, kr, kb, journal = reduce_to_proper("RRBB", 1, 1)
    assert reduced is None
    assert (kr, kb) == (0, 0)
    assert len(journal) == 2
    lifted = lift_cycle_matching("RRBB", reduced, [], journal)
    g = cycle_graph("RRBB")
    assert color_profile(g, lifted).rb == (1, 1)


def test_reduce_lift_random_cycles():
    rng = random.Random(77)
    for _ in range(400):
        ell = rng.randrange(2, 9)
        colors = "".join(rng.choice("RBY") for _ in range(2 * ell))
        comp = even_cycle_from_string(colors)
        p0, p1 = comp.even_profile().rb, comp.odd_profile().rb
        pts = segment_integer_points(p0, p1)
        kr, kb = pts[rng.randrange(len(pts))]
        reduced, kr2, kb2, journal = reduce_to_proper(colors, kr, kb)
        g = cycle_graph(colors)
        if reduced is None:
            lifted = lift_cycle_matching(colors, reduced, [], journal)
        else:
            assert is_proper_cycle(reduced)
            rp0, rp1 = reduced.even_profile().rb, reduced.odd_profile().rb
            from rbymatch.cycles import on_segment

            assert on_segment((kr2, kb2), rp0, rp1)
            inner = solve_even_cycle(reduced, kr2, kb2)
            lifted = lift_cycle_matching(colors, reduced, inner, journal)
        prof = color_profile(g, lifted)  # also validates the matching
        assert prof.red == kr
        assert prof.blue in (kb - 1, kb)


def test_find_good_path_fig3():
    gp = find_good_path(FIG3, 3, 3)
    assert 0 <= gp.v < 9 and gp.v < gp.u < gp.v + 9
    # (2,5) and (3,8) are good; the scan returns the minimal (v,u)
    assert gp == (1, 4)


def test_find_good_path_rbrb():
    assert find_good_path("RBRB", 1, 1) == (0, 1)


def test_quasi_matching_fig3():
    quasi, matching = quasi_matching_from_good_path(FIG3, 2, 5, 3, 3)
    assert quasi == frozenset({5, 7, 9}) | frozenset({10, 12, 14, 16, 0, 2})
    comp = even_cycle_from_string(FIG3)
    assert comp.profile_of(quasi).rb == (3, 3)
    assert matching == quasi - {9}
    assert comp.profile_of(matching).rb == (3, 2)
    assert len(matching) == 8


def test_quasi_matching_rbrb():
    quasi, matching = quasi_matching_from_good_path("RBRB", 0, 1, 1, 1)
    assert quasi == frozenset({1, 2})
    assert matching == frozenset({2})


def test_quasi_matching_rejects_bad_path():
    with pytest.raises(ValueError):
        quasi_matching_from_good_path(FIG3, 0, 3, 3, 3)


def test_quasi_matching_profile_identity_random():
    rng = random.Random(31)
    done = 0
    while done < 300:
        ell = rng.randrange(2, 9)
        colors = "".join(rng.choice("RBY") for _ in range(2 * ell))
        comp = even_cycle_from_string(colors)
        if not is_proper_cycle(comp):
            continue
        p0, p1 = comp.even_profile().rb, comp.odd_profile().rb
        pts = [p for p in segment_integer_points(p0, p1) if p not in (p0, p1)]
        if not pts:
            continue
        kr, kb = pts[rng.randrange(len(pts))]
        gp = find_good_path(colors, kr, kb)
        quasi, matching = quasi_matching_from_good_path(colors, gp.v, gp.u, kr, kb)
        assert comp.profile_of(quasi).rb == (kr, kb)
        prof = comp.profile_of(matching)
        assert prof.red == kr and prof.blue in (kb - 1, kb)
        assert len(matching) == ell - 1
        g = cycle_graph(colors)
        assert color_profile(g, matching)  # validates
        done += 1


def test_cycle_selection_matches_oracle_reachability():
    # wherever the solver claims a profile, the oracle agrees it is optimal-size
    rng = random.Random(13)
    for _ in range(60):
        ell = rng.randrange(2, 7)
        colors = "".join(rng.choice("RBY") for _ in range(2 * ell))
        comp = even_cycle_from_string(colors)
        p0, p1 = comp.even_profile().rb, comp.odd_profile().rb
        for kr, kb in segment_integer_points(p0, p1):
            got = solve_even_cycle(colors, kr, kb)
            prof = comp.profile_of(got)
            g = cycle_graph(colors)
            oracle_m = exact_optimum(g, prof.red, prof.blue)
            assert oracle_m is not None
            assert len(oracle_m) >= len(got)


def test_tightness_holds_on_all_three_variants():
    # odd path, even path with a trailing yellow, and the closed cycle all
    # have maximum conforming size exactly |M1| - 1 under (3, 2)
    from rbymatch.graph import path_graph
    from rbymatch.oracle import best_profile_size

    g_odd = path_graph(TIGHT_PATH)
    assert best_profile_size(g_odd, [(3, 2), (3, 1)]) == 5
    got = solve_path_or_cycle(path_from_string(TIGHT_PATH), 3, 2)
    assert len(got) == 5

    even = TIGHT_PATH + "Y"
    g_even = path_graph(even)
    assert best_profile_size(g_even, [(3, 2), (3, 1)]) == 6
    got = solve_path_or_cycle(path_from_string(even), 3, 2)
    assert len(got) == 6
    assert color_profile(g_even, got).red == 3

    g_cyc = cycle_graph(even)
    assert best_profile_size(g_cyc, [(3, 2), (3, 1)]) == 6
    got = solve_path_or_cycle(even_cycle_from_string(even), 3, 2)
    assert len(got) == 6


def test_find_good_path_fig3_all_listed_paths_are_good():
    # (2,5) and (3,8) both satisfy the good-path identity
    for v, u in ((2, 5), (3, 8)):
        quasi, _ = quasi_matching_from_good_path(FIG3, v, u, 3, 3)
        comp = even_cycle_from_string(FIG3)
        assert comp.profile_of(quasi).rb == (3, 3)


def test_no_yellow_alternating_construction_matches():
    # red-blue alternating proper cycles: first k_red evens plus compatible blues
    for ell in (2, 3, 4, 5):
        colors = "RB" * ell
        comp = even_cycle_from_string(colors)
        for kr in range(1, ell):
            kb = ell - kr
            got = solve_even_cycle(colors, kr, kb)
            prof = comp.profile_of(got)
            assert prof.rb == (kr, kb - 1)
            assert len(got) == ell - 1
