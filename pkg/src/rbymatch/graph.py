"""Colored-graph and matching data model shared by all solvers.

Edges carry a color in {R, B, Y} and a stable integer id (their index in the
input edge sequence).  Parallel edges are allowed; self-loops are not.  All
types are immutable after construction and every operation here is a pure
function, so they are safe to share across test shards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

RED = "R"
BLUE = "B"
YELLOW = "Y"
COLORS = (RED, BLUE, YELLOW)


class Edge(NamedTuple):
    u: int
    v: int
    color: str
    dummy: bool = False


class ColorProfile(NamedTuple):
    red: int
    blue: int
    yellow: int

    def __add__(self, other):  # type: ignore[override]
        return ColorProfile(
            self.red + other.red,
            self.blue + other.blue,
            self.yellow + other.yellow,
        )

    @property
    def rb(self) -> tuple[int, int]:
        return (self.red, self.blue)


def profile_of_colors(colors: Iterable[str]) -> ColorProfile:
    red = blue = yellow = 0
    for c in colors:
        if c == RED:
            red += 1
        elif c == BLUE:
            blue += 1
        elif c == YELLOW:
            yellow += 1
        else:
            raise ValueError(f"unknown color {c!r}")
    return ColorProfile(red, blue, yellow)


class ColoredGraph:
    """An edge-colored multigraph on vertices 0..vertex_count-1."""

    __slots__ = ("vertex_count", "edges", "_incidence")

    def __init__(self, vertex_count: int, edges: Iterable[tuple]):
        if vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        normalized = []
        for e in edges:
            edge = Edge(*e)
            if not (0 <= edge.u < vertex_count and 0 <= edge.v < vertex_count):
                raise ValueError(f"edge endpoint out of range: {edge}")
            if edge.u == edge.v:
                raise ValueError(f"self-loop not allowed: {edge}")
            if edge.color not in COLORS:
                raise ValueError(f"unknown color {edge.color!r}")
            if edge.dummy and edge.color != YELLOW:
                raise ValueError("dummy edges must be yellow")
            normalized.append(edge)
        self.vertex_count = vertex_count
        self.edges: tuple[Edge, ...] = tuple(normalized)
        incidence: list[list[int]] = [[] for _ in range(vertex_count)]
        for i, edge in enumerate(self.edges):
            incidence[edge.u].append(i)
            incidence[edge.v].append(i)
        self._incidence = tuple(tuple(ids) for ids in incidence)

    def __repr__(self) -> str:
        return f"ColoredGraph({self.vertex_count}, {list(self.edges)!r})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ColoredGraph)
            and self.vertex_count == other.vertex_count
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def incident(self, vertex: int) -> tuple[int, ...]:
        return self._incidence[vertex]

    def endpoints(self, edge_id: int) -> tuple[int, int]:
        e = self.edges[edge_id]
        return (e.u, e.v)

    def color(self, edge_id: int) -> str:
        return self.edges[edge_id].color

    def color_counts(self) -> ColorProfile:
        return profile_of_colors(e.color for e in self.edges)


def cycle_graph(colors: str | Iterable[str]) -> ColoredGraph:
    """Cycle with edge i joining vertex i to vertex (i+1) mod n."""
    cols = list(colors)
    n = len(cols)
    if n < 2:
        raise ValueError("cycle needs at least 2 edges")
    return ColoredGraph(n, [(i, (i + 1) % n, c) for i, c in enumerate(cols)])


def path_graph(colors: str | Iterable[str]) -> ColoredGraph:
    """Path with edge i joining vertex i to vertex i+1."""
    cols = list(colors)
    if not cols:
        raise ValueError("path needs at least 1 edge")
    return ColoredGraph(len(cols) + 1, [(i, i + 1, c) for i, c in enumerate(cols)])


EVEN_CYCLE = "even_cycle"
EVEN_PATH = "even_path"
ODD_PATH = "odd_path"


@dataclass(frozen=True)
class CycleOrPath:
    """A colored path or cycle with edges numbered consecutively from 0.

    For components extracted from a host graph, ``edge_ids[i]`` is the original
    id of edge i and ``sources[i]`` records which of the two input matchings
    edge i came from (0 or 1).  Even positions form one matching of the
    structure, odd positions the other.
    """

    kind: str
    colors: tuple[str, ...]
    edge_ids: tuple[int, ...] | None = None
    sources: tuple[int, ...] | None = None
    dummies: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        n = len(self.colors)
        if self.kind in (EVEN_CYCLE, EVEN_PATH):
            if n % 2 != 0:
                raise ValueError(f"{self.kind} must have an even number of edges")
        elif self.kind == ODD_PATH:
            if n % 2 != 1:
                raise ValueError("odd_path must have an odd number of edges")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == EVEN_CYCLE and n < 2:
            raise ValueError("cycle needs at least 2 edges")
        for c in self.colors:
            if c not in COLORS:
                raise ValueError(f"unknown color {c!r}")
        if self.edge_ids is not None and len(self.edge_ids) != n:
            raise ValueError("edge_ids length mismatch")
        if self.sources is not None and len(self.sources) != n:
            raise ValueError("sources length mismatch")

    def __len__(self) -> int:
        return len(self.colors)

    @property
    def is_cycle(self) -> bool:
        return self.kind == EVEN_CYCLE

    def even_edges(self) -> tuple[int, ...]:
        return tuple(range(0, len(self.colors), 2))

    def odd_edges(self) -> tuple[int, ...]:
        return tuple(range(1, len(self.colors), 2))

    def profile_of(self, positions: Iterable[int]) -> ColorProfile:
        return profile_of_colors(self.colors[p] for p in positions)

    def even_profile(self) -> ColorProfile:
        return self.profile_of(self.even_edges())

    def odd_profile(self) -> ColorProfile:
        return self.profile_of(self.odd_edges())

    def to_edge_ids(self, positions: Iterable[int]) -> frozenset[int]:
        if self.edge_ids is None:
            raise ValueError("component has no edge id back-references")
        return frozenset(self.edge_ids[p] for p in positions)


def even_cycle_from_string(colors: str | Iterable[str]) -> CycleOrPath:
    cols = tuple(colors)
    return CycleOrPath(EVEN_CYCLE, cols, edge_ids=tuple(range(len(cols))))


def path_from_string(colors: str | Iterable[str]) -> CycleOrPath:
    cols = tuple(colors)
    kind = EVEN_PATH if len(cols) % 2 == 0 else ODD_PATH
    return CycleOrPath(kind, cols, edge_ids=tuple(range(len(cols))))


def validate_matching(graph: ColoredGraph, edge_ids: Iterable[int]) -> bool:
    """True iff the ids exist in the graph and no two edges share a vertex."""
    seen: set[int] = set()
    used: set[int] = set()
    for eid in edge_ids:
        if not isinstance(eid, int) or not (0 <= eid < graph.edge_count):
            return False
        if eid in seen:
            return False
        seen.add(eid)
        u, v = graph.endpoints(eid)
        if u in used or v in used:
            return False
        used.add(u)
        used.add(v)
    return True


def color_profile(graph: ColoredGraph, edge_ids: Iterable[int]) -> ColorProfile:
    """Exact per-color counts of a matching's edges."""
    ids = list(edge_ids)
    for eid in ids:
        if not (0 <= eid < graph.edge_count):
            raise ValueError(f"edge id {eid} out of range")
    if not validate_matching(graph, ids):
        raise ValueError("edge set is not a matching")
    return profile_of_colors(graph.color(eid) for eid in ids)


def matching_size_profile(graph: ColoredGraph, edge_ids: Iterable[int]) -> tuple[int, ColorProfile]:
    ids = frozenset(edge_ids)
    return len(ids), color_profile(graph, ids)


def symdiff_components(
    graph: ColoredGraph,
    m0: Iterable[int],
    m1: Iterable[int],
) -> list[CycleOrPath]:
    """Decompose M0 symmetric-difference M1 into alternating paths and cycles.

    Components are emitted in order of their smallest contained edge id.  A
    path is numbered starting at the extremal edge with the smaller id; a
    cycle starts at its smallest edge id and proceeds toward the smaller of
    the two neighbouring ids.  ``sources[i]`` is 0 for M0 edges, 1 for M1.
    """
    set0 = frozenset(m0)
    set1 = frozenset(m1)
    if not validate_matching(graph, set0):
        raise ValueError("m0 is not a matching")
    if not validate_matching(graph, set1):
        raise ValueError("m1 is not a matching")
    diff = sorted(set0 ^ set1)
    if not diff:
        return []

    diff_set = set(diff)
    incident: dict[int, list[int]] = {}
    for eid in diff:
        for vtx in graph.endpoints(eid):
            incident.setdefault(vtx, []).append(eid)
    for ids in incident.values():
        if len(ids) > 2:
            raise InvalidAlternation("vertex incident to three difference edges")

    def other_endpoint(eid: int, vtx: int) -> int:
        u, v = graph.endpoints(eid)
        return v if vtx == u else u

    def walk(start_edge: int, start_vertex: int, component: set[int]) -> list[int]:
        """Edges in order starting with start_edge, leaving via start_vertex."""
        order = [start_edge]
        prev_edge = start_edge
        vtx = start_vertex
        while True:
            nxt = [e for e in incident[vtx] if e != prev_edge and e in component]
            if not nxt:
                break
            prev_edge = nxt[0]
            if prev_edge == start_edge:
                break
            order.append(prev_edge)
            vtx = other_endpoint(prev_edge, vtx)
        return order

    visited: set[int] = set()
    components: list[CycleOrPath] = []
    for seed in diff:
        if seed in visited:
            continue
        # collect the connected component of the difference containing seed
        component = {seed}
        frontier = [seed]
        while frontier:
            eid = frontier.pop()
            for vtx in graph.endpoints(eid):
                for nb in incident[vtx]:
                    if nb in diff_set and nb not in component:
                        component.add(nb)
                        frontier.append(nb)
        visited |= component

        degree: dict[int, int] = {}
        for eid in component:
            for vtx in graph.endpoints(eid):
                degree[vtx] = degree.get(vtx, 0) + 1
        path_ends = sorted(v for v, d in degree.items() if d == 1)

        if path_ends:
            extremal = [
                e
                for e in sorted(component)
                if any(degree[v] == 1 for v in graph.endpoints(e))
            ]
            first = extremal[0]
            u, v = graph.endpoints(first)
            inner = v if degree[u] == 1 else u
            if degree[u] == 1 and degree[v] == 1:
                inner = v  # single-edge component
            order = walk(first, inner, component)
        else:
            first = min(component)
            u, v = graph.endpoints(first)
            nb_u = [e for e in incident[u] if e != first]
            nb_v = [e for e in incident[v] if e != first]
            # proceed toward the smaller neighbouring edge id
            if nb_v and (not nb_u or nb_v[0] <= nb_u[0]):
                order = walk(first, v, component)
            else:
                order = walk(first, u, component)

        sources = tuple(0 if e in set0 else 1 for e in order)
        for a, b in zip(sources, sources[1:]):
            if a == b:
                raise InvalidAlternation("component does not alternate")
        if not path_ends:
            if len(order) % 2 != 0:
                raise InvalidAlternation("odd cycle in symmetric difference")
            if sources[0] == sources[-1]:
                raise InvalidAlternation("cycle does not alternate")
            kind = EVEN_CYCLE
        else:
            kind = EVEN_PATH if len(order) % 2 == 0 else ODD_PATH
        components.append(
            CycleOrPath(
                kind,
                tuple(graph.color(e) for e in order),
                edge_ids=tuple(order),
                sources=sources,
            )
        )
    components.sort(key=lambda c: c.edge_ids[0])  # type: ignore[index]
    return components


class InvalidAlternation(ValueError):
    """The symmetric difference of two matchings was structurally invalid."""


def sorted_ids(edge_ids: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(edge_ids))
