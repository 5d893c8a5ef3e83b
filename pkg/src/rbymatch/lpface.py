"""Color-constrained matching LP and minimal-face extraction.

The model is the classical matching polytope description (nonnegativity,
degree constraints, and one blossom inequality per odd vertex set) with two
equality rows pinning the red and blue totals, solved in exact rational
arithmetic.  Blossom rows are fully enumerated at construction; the solver
activates them lazily, re-separating by direct enumeration until none is
violated, which yields a basic optimal solution of the full model (a vertex
of a relaxation that is feasible for the full region is a vertex of it).

The minimal face of the matching polytope containing the optimum is
recovered by enumerating matchings inside the support and keeping those tight
on every constraint tight at the optimum; at most four survive, forming a
point, segment, triangle, or parallelogram.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvariantError
from .graph import BLUE, RED, ColoredGraph, color_profile
from .oracle import OracleCap, DEFAULT_CAP, check_cap, enumerate_matchings
from .simplex import solve_standard_form

ZERO = Fraction(0)


@dataclass(frozen=True)
class BlossomRow:
    vertex_mask: int
    rhs: int  # (|S| - 1) // 2

    def edge_ids(self, graph: ColoredGraph) -> list[int]:
        mask = self.vertex_mask
        out = []
        for eid in range(graph.edge_count):
            u, v = graph.endpoints(eid)
            if (mask >> u) & 1 and (mask >> v) & 1:
                out.append(eid)
        return out


@dataclass(frozen=True)
class LPModel:
    graph: ColoredGraph
    k_red: int
    k_blue: int
    blossom_rows: tuple[BlossomRow, ...]

    @property
    def degree_row_count(self) -> int:
        return self.graph.vertex_count


@dataclass(frozen=True)
class RationalSolution:
    values: tuple[Fraction, ...]  # per edge id
    objective: Fraction

    def support(self) -> tuple[int, ...]:
        return tuple(e for e, x in enumerate(self.values) if x != 0)

    def value(self, edge_id: int) -> Fraction:
        return self.values[edge_id]


SINGLETON = "singleton"
SEGMENT = "segment"
TRIANGLE = "triangle"
PARALLELOGRAM = "parallelogram"


@dataclass(frozen=True)
class FaceDescriptor:
    vertex_matchings: tuple[frozenset[int], ...]
    classification: str
    projected_vertices: tuple[tuple[int, int], ...]


def build_lp(
    graph: ColoredGraph, k_red: int, k_blue: int, cap: OracleCap = DEFAULT_CAP
) -> LPModel:
    """Materialize the full model, one blossom row per odd set of >= 3 vertices."""
    check_cap(graph, cap)
    if k_red < 0 or k_blue < 0:
        raise ValueError("color requirements must be nonnegative")
    n = graph.vertex_count
    rows = []
    for size in range(3, n + 1, 2):
        for subset in combinations(range(n), size):
            mask = 0
            for v in subset:
                mask |= 1 << v
            rows.append(BlossomRow(mask, (size - 1) // 2))
    return LPModel(graph, k_red, k_blue, tuple(rows))


def _edge_masks(graph: ColoredGraph) -> list[int]:
    return [
        (1 << u) | (1 << v) for u, v in (graph.endpoints(e) for e in range(graph.edge_count))
    ]


def _row_value(mask: int, support: Sequence[tuple[int, int, Fraction]]) -> Fraction:
    total = ZERO
    for _, emask, x in support:
        if emask & mask == emask:
            total += x
    return total


def _solve_activated(model: LPModel, active: list[BlossomRow]):
    graph = model.graph
    m = graph.edge_count
    objective = [Fraction(1)] * m
    ub_rows = []
    for v in range(graph.vertex_count):
        coeffs = [(e, Fraction(1)) for e in graph.incident(v)]
        ub_rows.append((coeffs, Fraction(1)))
    for row in active:
        coeffs = [(e, Fraction(1)) for e in row.edge_ids(graph)]
        ub_rows.append((coeffs, Fraction(row.rhs)))
    eq_rows = [
        (
            [(e, Fraction(1)) for e in range(m) if graph.color(e) == RED],
            Fraction(model.k_red),
        ),
        (
            [(e, Fraction(1)) for e in range(m) if graph.color(e) == BLUE],
            Fraction(model.k_blue),
        ),
    ]
    return solve_standard_form(m, objective, ub_rows, eq_rows)


def _support_odd_masks(support_vertices: list[int]) -> Iterable[tuple[int, int]]:
    """(mask, rhs) over odd subsets of the given vertices, size >= 3.

    Restricting separation and tightness scans to vertices carrying fractional
    weight is exact: a violated or tight odd set with stray isolated vertices
    forces the corresponding support-only condition checked here.
    """
    for size in range(3, len(support_vertices) + 1, 2):
        for subset in combinations(support_vertices, size):
            mask = 0
            for v in subset:
                mask |= 1 << v
            yield mask, (size - 1) // 2


def solve_lp(model: LPModel) -> RationalSolution | None:
    """Basic optimal solution of the full model in exact rationals, or None.

    Violated blossom rows are activated in rounds (most violated first, at
    most 24 per round) and the LP re-solved from scratch with Bland's rule,
    so the result is deterministic.
    """
    graph = model.graph
    emasks = _edge_masks(graph)
    active: list[BlossomRow] = []
    active_masks: set[int] = set()
    for _ in range(len(model.blossom_rows) + 1):
        res = _solve_activated(model, active)
        if res is None:
            return None
        support = [
            (e, emasks[e], x) for e, x in enumerate(res.x) if x != 0
        ]
        support_vertices = sorted(
            {u for e, _, _ in support for u in graph.endpoints(e)}
        )
        violated: list[tuple[Fraction, int, int]] = []
        for mask, rhs in _support_odd_masks(support_vertices):
            if mask in active_masks:
                continue
            value = _row_value(mask, support)
            if value > rhs:
                violated.append((value - rhs, mask, rhs))
        if not violated:
            return RationalSolution(values=tuple(res.x), objective=res.objective)
        violated.sort(key=lambda t: (-t[0], t[1]))
        for _, mask, rhs in violated[:24]:
            active.append(BlossomRow(mask, rhs))
            active_masks.add(mask)
    raise InvariantError("blossom separation did not converge")


def project_profile(graph: ColoredGraph, x) -> tuple[Fraction, Fraction]:
    """(red total, blue total) of a rational solution or matching."""
    if isinstance(x, RationalSolution):
        red = sum(
            (x.values[e] for e in range(graph.edge_count) if graph.color(e) == RED),
            ZERO,
        )
        blue = sum(
            (x.values[e] for e in range(graph.edge_count) if graph.color(e) == BLUE),
            ZERO,
        )
        return (red, blue)
    prof = color_profile(graph, x)
    return (Fraction(prof.red), Fraction(prof.blue))


def _tight_rows(model: LPModel, solution: RationalSolution):
    graph = model.graph
    emasks = _edge_masks(graph)
    support = [(e, emasks[e], solution.values[e]) for e in solution.support()]
    support_vertices = sorted({u for e, _, _ in support for u in graph.endpoints(e)})
    tight_degree = []
    for v in range(graph.vertex_count):
        total = sum((solution.values[e] for e in graph.incident(v)), ZERO)
        if total == 1:
            tight_degree.append(v)
    tight_blossoms = []
    for mask, rhs in _support_odd_masks(support_vertices):
        if _row_value(mask, support) == rhs:
            tight_blossoms.append((mask, rhs))
    return tight_degree, tight_blossoms


def minimal_face(
    graph: ColoredGraph,
    model: LPModel,
    solution: RationalSolution,
    cap: OracleCap = DEFAULT_CAP,
) -> FaceDescriptor:
    """Vertices of the smallest matching-polytope face containing the optimum.

    A matching is a face vertex iff its support stays inside the optimum's
    support and its characteristic vector is tight on every degree and blossom
    constraint tight at the optimum.  More than four vertices would contradict
    the dimension bound and is a fatal internal error.
    """
    support = solution.support()
    tight_degree, tight_blossoms = _tight_rows(model, solution)
    vertices = []
    for m in enumerate_matchings(graph, restrict_support=support, cap=cap):
        covered = set()
        for e in m:
            covered.update(graph.endpoints(e))
        if any(v not in covered for v in tight_degree):
            continue
        ok = True
        for mask, rhs in tight_blossoms:
            count = 0
            for e in m:
                u, w = graph.endpoints(e)
                if (mask >> u) & 1 and (mask >> w) & 1:
                    count += 1
            if count != rhs:
                ok = False
                break
        if ok:
            vertices.append(m)
    if not vertices:
        raise InvariantError("optimal solution lies in no face of the enumeration")
    if len(vertices) > 4:
        raise InvariantError(
            f"minimal face has {len(vertices)} vertices; dimension bound violated"
        )
    vertices.sort(key=lambda m: tuple(sorted(m)))

    rank = _affine_rank(vertices)
    if rank == 0:
        classification = SINGLETON
    elif rank == 1:
        classification = SEGMENT
    elif len(vertices) == 3:
        classification = TRIANGLE
    else:
        classification = PARALLELOGRAM
    expected = {SINGLETON: 1, SEGMENT: 2, TRIANGLE: 3, PARALLELOGRAM: 4}[classification]
    if len(vertices) != expected:
        raise InvariantError(
            f"face with {len(vertices)} vertices classified {classification}"
        )
    if classification == PARALLELOGRAM:
        vertices = _order_parallelogram(vertices)
    projected = tuple(
        tuple(int(c) for c in project_profile(graph, m)) for m in vertices
    )
    return FaceDescriptor(
        vertex_matchings=tuple(vertices),
        classification=classification,
        projected_vertices=projected,  # type: ignore[arg-type]
    )


def _affine_rank(vertices: list[frozenset[int]]) -> int:
    if len(vertices) <= 1:
        return 0
    base = vertices[0]
    diffs = [v ^ base for v in vertices[1:]]
    # signed difference vectors over the union of involved edges
    edges = sorted(set().union(*diffs)) if diffs else []
    rows = []
    for v in vertices[1:]:
        rows.append([Fraction((e in v) - (e in base)) for e in edges])
    return _matrix_rank(rows)


def _matrix_rank(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows if any(c != 0 for c in r)]
    rank = 0
    col = 0
    width = len(rows[0]) if rows else 0
    while rank < len(rows) and col < width:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        rows[rank] = [c / pv for c in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def _order_parallelogram(vertices: list[frozenset[int]]) -> list[frozenset[int]]:
    """Cyclic order [v1, v2, v3, v4] with v1 + v3 = v2 + v4 as vectors."""
    v1 = vertices[0]
    rest = vertices[1:]
    for opp_idx in range(3):
        opposite = rest[opp_idx]
        others = [rest[i] for i in range(3) if i != opp_idx]
        if _char_sum_equal(v1, opposite, others[0], others[1]):
            a, b = sorted(others, key=lambda m: tuple(sorted(m)))
            ordered = [v1, a, opposite, b]
            d1 = v1 ^ a
            d2 = a ^ opposite
            if d1 & d2:
                raise InvariantError(
                    "parallelogram side supports intersect; ordering invalid"
                )
            return ordered
    raise InvariantError("four face vertices do not form a parallelogram")


def _char_sum_equal(a, b, c, d) -> bool:
    """chi(a) + chi(b) == chi(c) + chi(d) as integer vectors."""
    edges = a | b | c | d
    for e in edges:
        if (e in a) + (e in b) != (e in c) + (e in d):
            return False
    return True


def convex_coefficients(
    graph: ColoredGraph, face: FaceDescriptor, solution: RationalSolution
) -> list[Fraction] | None:
    """Exact convex-combination coefficients writing the optimum over the
    face vertices; None when no such combination exists."""
    vertices = face.vertex_matchings
    k = len(vertices)
    edges = sorted(set().union(*vertices) | set(solution.support()))
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for e in edges:
        rows.append([Fraction(1) if e in m else ZERO for m in vertices])
        rhs.append(solution.values[e])
    rows.append([Fraction(1)] * k)
    rhs.append(Fraction(1))
    coeffs = _solve_linear_system(rows, rhs, k)
    if coeffs is None:
        return None
    if any(c < 0 for c in coeffs):
        return None
    return coeffs


def _solve_linear_system(
    rows: list[list[Fraction]], rhs: list[Fraction], n: int
) -> list[Fraction] | None:
    aug = [row[:] + [b] for row, b in zip(rows, rhs)]
    pivots = []
    rank = 0
    for col in range(n):
        pivot = next((i for i in range(rank, len(aug)) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        pv = aug[rank][col]
        aug[rank] = [c / pv for c in aug[rank]]
        for i in range(len(aug)):
            if i != rank and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, len(aug)):
        if aug[i][-1] != 0:
            return None  # inconsistent
    solution = [ZERO] * n
    for i, col in enumerate(pivots):
        solution[col] = aug[i][-1]
    # verify (free variables default to zero)
    for row, b in zip(rows, rhs):
        if sum((a * x for a, x in zip(row, solution)), ZERO) != b:
            return None
    return solution


@dataclass(frozen=True)
class DispatchFace:
    """Face normalized for the driver's case split on the projected shape.

    When the projection collapses dimensions (all vertices share a profile,
    or a two-dimensional face projects onto a segment), the face shrinks to
    the boundary piece of the projection hosting the requirement point so
    that each case sees the requirement in relative-interior position.
    """

    classification: str
    vertex_matchings: tuple[frozenset[int], ...]
    projected_vertices: tuple[tuple[int, int], ...]


def _adjacent_pairs(face: FaceDescriptor) -> list[tuple[int, int]]:
    k = len(face.vertex_matchings)
    if k == 2:
        return [(0, 1)]
    if k == 3:
        return [(0, 1), (0, 2), (1, 2)]
    return [(0, 1), (1, 2), (2, 3), (3, 0)]  # cyclic order


def dispatch_face(face: FaceDescriptor, k_red: int, k_blue: int) -> DispatchFace:
    from .cycles import on_segment  # local import avoids a cycle

    projected = face.projected_vertices
    vertices = face.vertex_matchings
    point = (k_red, k_blue)
    proj_rank = _point_affine_rank(projected)
    if proj_rank == 0:
        if projected[0] != point:
            raise InvariantError("projected face does not contain the requirement")
        best = max(vertices, key=lambda m: (len(m), [-e for e in sorted(m)]))
        idx = vertices.index(best)
        return DispatchFace(SINGLETON, (best,), (projected[idx],))
    if proj_rank == 1:
        for i, j in _adjacent_pairs(face):
            if projected[i] != projected[j] and on_segment(
                point, projected[i], projected[j]
            ):
                return DispatchFace(
                    SEGMENT,
                    (vertices[i], vertices[j]),
                    (projected[i], projected[j]),
                )
        raise InvariantError("no adjacent pair hosts the requirement point")
    return DispatchFace(face.classification, vertices, projected)


def _point_affine_rank(points: Sequence[tuple[int, int]]) -> int:
    base = points[0]
    diffs = [(p[0] - base[0], p[1] - base[1]) for p in points[1:]]
    diffs = [d for d in diffs if d != (0, 0)]
    if not diffs:
        return 0
    first = diffs[0]
    for d in diffs[1:]:
        if first[0] * d[1] - first[1] * d[0] != 0:
            return 2
    return 1
