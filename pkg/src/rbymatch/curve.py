"""Imbalance-curve engine: periodic lattice polylines and their crossings.

A properly paired 2L-cycle induces a polyline through integer points whose
moves encode the colors of consecutive edge pairs.  This module evaluates the
periodic extension of such polylines, decides injectivity, classifies points
against the two plane components cut out by an injective periodic curve, and
searches for intersecting and crossing pairs between the curve and its
translate.  All arithmetic is exact (integers and fractions).

Pair searches are exhaustive integer scans: period lengths are small at the
scale this package targets, and certified search plus verification is the
executable counterpart of the existence guarantees the solvers rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import CrossingNotFoundError, InvariantError
from .graph import EVEN_CYCLE, CycleOrPath

Point = tuple[Fraction, Fraction]
IntPoint = tuple[int, int]

# move encoding for a consecutive (even, odd) edge color pair
MOVE_OF_PAIR: dict[tuple[str, str], IntPoint] = {
    ("R", "Y"): (-1, 0),
    ("Y", "R"): (1, 0),
    ("B", "Y"): (0, -1),
    ("Y", "B"): (0, 1),
    ("R", "B"): (-1, 1),
    ("B", "R"): (1, -1),
}
PAIR_OF_MOVE = {m: p for p, m in MOVE_OF_PAIR.items()}
UNIT_MOVES = frozenset(PAIR_OF_MOVE)


def _add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _scale(a, s):
    return (a[0] * s, a[1] * s)


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


@dataclass(frozen=True)
class LatticePolyline:
    """Integer-breakpoint polyline d(0..L) with periodic extension d-infinity."""

    points: tuple[IntPoint, ...]

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("polyline needs at least one segment")
        for p in self.points:
            if not (isinstance(p[0], int) and isinstance(p[1], int)):
                raise ValueError("breakpoints must be integer points")
        for a, b in zip(self.points, self.points[1:]):
            if a == b:
                raise ValueError("zero-length move not allowed")

    @property
    def period_length(self) -> int:
        return len(self.points) - 1

    @property
    def period_shift(self) -> IntPoint:
        return _sub(self.points[-1], self.points[0])

    @property
    def moves(self) -> tuple[IntPoint, ...]:
        return tuple(_sub(b, a) for a, b in zip(self.points, self.points[1:]))

    @property
    def has_unit_moves(self) -> bool:
        return all(m in UNIT_MOVES for m in self.moves)


def polyline_from_moves(moves: Iterable[IntPoint], origin: IntPoint = (0, 0)) -> LatticePolyline:
    pts = [origin]
    for m in moves:
        pts.append(_add(pts[-1], m))
    return LatticePolyline(tuple(pts))


def imbalance_curve(cycle: CycleOrPath | str | Sequence[str]) -> LatticePolyline:
    """Polyline tracking the color imbalance of growing even prefixes.

    Each consecutive (even, odd) color pair maps to one unit move; a pair of
    equal colors has no move and is rejected (the pairing must be proper).
    """
    if isinstance(cycle, CycleOrPath):
        if cycle.kind != EVEN_CYCLE:
            raise ValueError("imbalance curves are defined for even cycles")
        colors = cycle.colors
    else:
        colors = tuple(cycle)
    if len(colors) % 2 != 0 or len(colors) < 2:
        raise ValueError("need an even number of edges, at least 2")
    moves = []
    for i in range(0, len(colors), 2):
        pair = (colors[i], colors[i + 1])
        move = MOVE_OF_PAIR.get(pair)
        if move is None:
            raise ValueError(f"improper color pair {pair} at edges ({i}, {i + 1})")
        moves.append(move)
    return polyline_from_moves(moves)


def decode_moves(polyline: LatticePolyline) -> tuple[tuple[str, str], ...]:
    """The color pair behind each move; fails on non-unit moves."""
    out = []
    for m in polyline.moves:
        pair = PAIR_OF_MOVE.get(m)
        if pair is None:
            raise ValueError(f"move {m} is not a unit color move")
        out.append(pair)
    return tuple(out)


def periodic_eval(polyline: LatticePolyline, t) -> Point:
    """d-infinity(t): periodic extension with linear interpolation."""
    t = Fraction(t)
    ell = polyline.period_length
    k = t // ell
    r = t - k * ell
    i = int(r)
    if i == ell:  # r in [0, ell) so this cannot happen; guard anyway
        i = ell - 1
    frac = r - i
    a = polyline.points[i]
    b = polyline.points[i + 1]
    base = (a[0] + frac * (b[0] - a[0]), a[1] + frac * (b[1] - a[1]))
    dx, dy = polyline.period_shift
    return (base[0] + k * dx, base[1] + k * dy)


def _eval_int(polyline: LatticePolyline, t: int) -> IntPoint:
    ell = polyline.period_length
    k, r = divmod(t, ell)
    dx, dy = polyline.period_shift
    p = polyline.points[r]
    return (p[0] + k * dx, p[1] + k * dy)


def check_injective(polyline: LatticePolyline) -> bool:
    """Whether the periodic extension never revisits a point.

    For unit-move polylines, distinct translated copies can only meet at
    integer points, so an integer scan is exhaustive.  For general integer
    breakpoints a segment-level scan over enough copies is used instead.
    """
    delta = polyline.period_shift
    if delta == (0, 0):
        return False
    ell = polyline.period_length
    if polyline.has_unit_moves:
        dmax = max(abs(delta[0]), abs(delta[1]))
        kmax = (2 * ell) // dmax
        pts = [polyline.points[i] for i in range(ell)]
        index = {}
        for v, p in enumerate(pts):
            index.setdefault(p, []).append(v)
        for k in range(0, kmax + 1):
            shift = _scale(delta, k)
            for u in range(ell):
                target = _sub(pts[u], shift)
                for v in index.get(target, ()):  # d(u) == d(v) + k*delta
                    if k != 0 or u != v:
                        return False
        return True
    return _check_injective_general(polyline)


def _segments_of_copy(polyline: LatticePolyline, k: int) -> list[tuple[Point, Point]]:
    dx, dy = polyline.period_shift
    off = (k * dx, k * dy)
    pts = [_add(p, off) for p in polyline.points]
    return list(zip(pts, pts[1:]))


def _check_injective_general(polyline: LatticePolyline) -> bool:
    ell = polyline.period_length
    delta = polyline.period_shift
    origin = polyline.points[0]
    span = max(
        max(abs(p[0] - origin[0]) for p in polyline.points),
        max(abs(p[1] - origin[1]) for p in polyline.points),
    )
    dmax = max(abs(delta[0]), abs(delta[1]))
    kmax = (2 * span) // dmax + 1
    base = _segments_of_copy(polyline, 0)
    for k in range(0, kmax + 1):
        other = _segments_of_copy(polyline, k)
        for i, (a1, b1) in enumerate(base):
            for j, (a2, b2) in enumerate(other):
                if k == 0 and j <= i:
                    continue
                kind, data = segment_intersection(a1, b1, a2, b2)
                if kind == "none":
                    continue
                if kind == "overlap":
                    return False
                consecutive = (k == 0 and j == i + 1) or (
                    k == 1 and i == ell - 1 and j == 0
                )
                if consecutive and data[0] == b1:
                    continue  # shared chain point only
                return False
    return True


def segment_intersection(a1, b1, a2, b2):
    """Exact intersection of two closed segments.

    Returns ("none", None), ("point", (p, s, t)) with parameters in [0, 1],
    or ("overlap", (p, q)) for a shared collinear subsegment.
    """
    d1 = _sub(b1, a1)
    d2 = _sub(b2, a2)
    denom = _cross(d1, d2)
    diff = _sub(a2, a1)
    if denom != 0:
        s = Fraction(_cross(diff, d2), denom)
        t = Fraction(_cross(diff, d1), denom)
        if 0 <= s <= 1 and 0 <= t <= 1:
            p = _add(a1, _scale(d1, s))
            return ("point", (p, s, t))
        return ("none", None)
    if _cross(diff, d1) != 0:
        return ("none", None)  # parallel, not collinear
    # collinear: project on the dominant axis of d1
    axis = 0 if d1[0] != 0 else 1
    lo1, hi1 = sorted((a1[axis], b1[axis]))
    lo2, hi2 = sorted((a2[axis], b2[axis]))
    lo, hi = max(lo1, lo2), min(hi1, hi2)
    if lo > hi:
        return ("none", None)
    if lo == hi:
        val = lo
        frac1 = Fraction(val - a1[axis], d1[axis])
        p = _add(a1, _scale(d1, frac1))
        if d2[axis] != 0:
            t = Fraction(val - a2[axis], d2[axis])
        else:
            t = Fraction(0)
        return ("point", (p, frac1, t))

    def at(seg_a, seg_d, val):
        f = Fraction(val - seg_a[axis], seg_d[axis])
        return _add(seg_a, _scale(seg_d, f))

    return ("overlap", (at(a1, d1, lo), at(a1, d1, hi)))


class PeriodicCurve:
    """Point classification against an injective periodic polyline.

    The plane minus the curve has exactly two connected components.  Side
    labels are fixed deterministically: the component adjacent to the left of
    the first move (probe anchored at the first segment's midpoint) is SIDE_A.
    Classification uses a horizontal ray with a symbolic +epsilon perturbation
    of the query's y coordinate, counted over every translated copy that can
    meet the ray; omitted copies contribute an even crossing count, so the
    parity is exact.
    """

    SIDE_A = "A"
    SIDE_B = "B"
    ON = "on"

    def __init__(self, polyline: LatticePolyline):
        self.polyline = polyline
        self.delta = polyline.period_shift
        if self.delta == (0, 0):
            raise ValueError("periodic curve requires a nonzero period shift")
        pts = polyline.points
        self._xmin = min(p[0] for p in pts)
        self._xmax = max(p[0] for p in pts)
        self._ymin = min(p[1] for p in pts)
        self._ymax = max(p[1] for p in pts)
        self._copies: dict[int, list[tuple[Point, Point]]] = {}
        self._ref_parity: int | None = None

    def _copy_segments(self, k: int) -> list[tuple[Point, Point]]:
        segs = self._copies.get(k)
        if segs is None:
            segs = _segments_of_copy(self.polyline, k)
            self._copies[k] = segs
        return segs

    @staticmethod
    def _k_range(lo, hi, step) -> range:
        # integer k with k*step in [lo, hi]
        if step > 0:
            return range(math.ceil(Fraction(lo) / step), math.floor(Fraction(hi) / step) + 1)
        return range(math.ceil(Fraction(hi) / step), math.floor(Fraction(lo) / step) + 1)

    def _copies_touching(self, p: Point) -> Iterable[int]:
        ranges = []
        if self.delta[0] != 0:
            ranges.append(
                self._k_range(p[0] - self._xmax, p[0] - self._xmin, self.delta[0])
            )
        if self.delta[1] != 0:
            ranges.append(
                self._k_range(p[1] - self._ymax, p[1] - self._ymin, self.delta[1])
            )
        ks = set(ranges[0])
        for r in ranges[1:]:
            ks &= set(r)
        return sorted(ks)

    def on_curve(self, p: Point) -> bool:
        for k in self._copies_touching(p):
            for a, b in self._copy_segments(k):
                if _cross(_sub(b, a), _sub(p, a)) != 0:
                    continue
                if min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(
                    a[1], b[1]
                ) <= p[1] <= max(a[1], b[1]):
                    return True
        return False

    def _ray_parity(self, p: Point) -> int:
        """Crossing parity of a canonical ray from p to infinity.

        A horizontal ray (+x, query height perturbed by +epsilon) works when
        the period shift has a vertical component: only finitely many copies
        meet the ray's height.  When the drift is purely horizontal the curve
        stays inside a bounded y-band forever, so a vertical ray (+y, query x
        perturbed by +epsilon) is used instead; copies not straddling the
        query's x contribute nothing or an even count, so parity is exact.
        """
        px, py = p
        count = 0
        if self.delta[1] != 0:
            ks = self._k_range(py - self._ymax - 1, py - self._ymin + 1, self.delta[1])
            for k in ks:
                for a, b in self._copy_segments(k):
                    ay, by = a[1], b[1]
                    if not ((ay <= py < by) or (by <= py < ay)):
                        continue
                    x_at = a[0] + (b[0] - a[0]) * Fraction(py - ay, by - ay)
                    if x_at == px:
                        raise InvariantError("ray test anchored on the curve")
                    if x_at > px:
                        count += 1
        else:
            ks = self._k_range(px - self._xmax - 1, px - self._xmin + 1, self.delta[0])
            for k in ks:
                for a, b in self._copy_segments(k):
                    ax, bx = a[0], b[0]
                    if not ((ax <= px < bx) or (bx <= px < ax)):
                        continue
                    y_at = a[1] + (b[1] - a[1]) * Fraction(px - ax, bx - ax)
                    if y_at == py:
                        raise InvariantError("ray test anchored on the curve")
                    if y_at > py:
                        count += 1
        return count & 1

    def _reference_parity(self) -> int:
        if self._ref_parity is None:
            a, b = self.polyline.points[0], self.polyline.points[1]
            mid = (Fraction(a[0] + b[0], 2), Fraction(a[1] + b[1], 2))
            move = _sub(b, a)
            left = (-move[1], move[0])
            scale = Fraction(1, 8)
            for _ in range(64):
                probe = _add(mid, _scale(left, scale))
                if not self.on_curve(probe):
                    self._ref_parity = self._ray_parity(probe)
                    return self._ref_parity
                scale /= 2
            raise InvariantError("could not place the side-A reference probe")
        return self._ref_parity

    def side_of(self, p) -> str:
        p = (Fraction(p[0]), Fraction(p[1]))
        if self.on_curve(p):
            return self.ON
        return self.SIDE_A if self._ray_parity(p) == self._reference_parity() else self.SIDE_B


def side_of(polyline: LatticePolyline, p) -> str:
    """Classify p against the periodic curve; requires an injective curve."""
    if not check_injective(polyline):
        raise ValueError("side classification needs an injective periodic curve")
    return PeriodicCurve(polyline).side_of(p)


def _on_open_segment(q, a, b) -> bool:
    if q == a or q == b:
        return False
    if _cross(_sub(b, a), _sub(q, a)) != 0:
        return False
    return min(a[0], b[0]) <= q[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= q[1] <= max(
        a[1], b[1]
    )


def _on_closed_segment(q, a, b) -> bool:
    return q == a or q == b or _on_open_segment(q, a, b)


class IntersectingPair(NamedTuple):
    """(u, v) with curve(u) == curve(v) + offset and v < u < v + period."""

    u: int
    v: int


def all_intersecting_pairs(polyline: LatticePolyline, q: IntPoint) -> list[IntersectingPair]:
    """Every integer pair (u, v), 0 <= v <= L, v < u < v + L, with
    d-infinity(u) = d(v) + (q - d(0)); ordered by (v, u)."""
    offset = _require_lattice_offset(polyline, q, open_segment=True)
    ell = polyline.period_length
    pairs = []
    values: dict[IntPoint, list[int]] = {}
    for u in range(1, 2 * ell):
        values.setdefault(_eval_int(polyline, u), []).append(u)
    for v in range(0, ell + 1):
        target = _add(polyline.points[v], offset)
        for u in values.get(target, ()):
            if v < u < v + ell:
                pairs.append(IntersectingPair(u, v))
    pairs.sort(key=lambda p: (p.v, p.u))
    return pairs


def _require_lattice_offset(polyline: LatticePolyline, q, open_segment: bool) -> IntPoint:
    if not (isinstance(q[0], int) and isinstance(q[1], int)):
        raise ValueError("q must be a lattice point for integer pair searches")
    a = polyline.points[0]
    b = polyline.points[-1]
    if open_segment:
        if not _on_open_segment(q, a, b):
            raise ValueError("q must lie strictly between the curve's endpoints")
    else:
        if not _on_closed_segment(q, a, b):
            raise ValueError("q must lie on the segment between the curve's endpoints")
    return _sub(q, a)


def find_intersecting_pair(polyline: LatticePolyline, q: IntPoint) -> IntersectingPair | None:
    """First intersecting pair by (v, u); None only if the scan fails."""
    pairs = all_intersecting_pairs(polyline, q)
    return pairs[0] if pairs else None


SIMPLE = "Simple"
OVERLAP_SAME = "OverlapSameOrientation"
OVERLAP_OPPOSITE = "OverlapOppositeOrientation"


@dataclass(frozen=True)
class CrossingPair:
    u: Fraction
    v: Fraction
    kind: str
    overlap_length: int

    def __post_init__(self):
        if (self.kind == SIMPLE) != (self.overlap_length == 0):
            raise ValueError("overlap_length must be 0 exactly for simple crossings")


def find_crossing_pair(polyline: LatticePolyline, q) -> CrossingPair:
    """A certified crossing pair for (d-infinity, d + q - d(0)).

    The returned pair satisfies v < u < v + L; the certificate (the translate
    touches the curve on [s, v] and sits on opposite sides just before s and
    just after v) is verified through side classification before returning.
    Failure to find one would falsify a structural guarantee and raises
    CrossingNotFoundError.
    """
    if not check_injective(polyline):
        raise ValueError("crossing search requires an injective periodic curve")
    a0 = polyline.points[0]
    q = (Fraction(q[0]), Fraction(q[1]))
    if not _on_closed_segment(q, a0, polyline.points[-1]):
        raise ValueError("q must lie on the segment between the curve's endpoints")
    for sa, sb in zip(polyline.points, polyline.points[1:]):
        if _on_closed_segment(q, sa, sb):
            raise ValueError("q must not lie on the curve itself")
    offset = _sub(q, a0)
    curve = PeriodicCurve(polyline)
    lattice = polyline.has_unit_moves and offset[0].denominator == 1 and offset[1].denominator == 1
    if lattice:
        result = _crossing_lattice(polyline, curve, (int(offset[0]), int(offset[1])))
    else:
        result = _crossing_general(polyline, curve, offset)
    if result is None:
        raise CrossingNotFoundError(
            "no certified crossing pair exists; this falsifies the crossing guarantee"
        )
    return result


def _g_eval(polyline: LatticePolyline, offset, t) -> Point:
    base = periodic_eval(polyline, t)
    return (base[0] + offset[0], base[1] + offset[1])


def _crossing_lattice(
    polyline: LatticePolyline, curve: PeriodicCurve, offset: IntPoint
) -> CrossingPair | None:
    ell = polyline.period_length
    values: dict[IntPoint, list[int]] = {}
    for u in range(1, 2 * ell):
        values.setdefault(_eval_int(polyline, u), []).append(u)

    candidates: list[tuple[int, int]] = []
    for v in range(1, ell):
        target = _add(polyline.points[v], offset)
        for u in values.get(target, ()):
            if v < u < v + ell:
                candidates.append((v, u))
    candidates.sort()

    scored: list[tuple[int, int, int, str]] = []
    for v, u in candidates:
        i_a = 0
        while i_a < v - 1:
            j = i_a + 1
            if _eval_int(polyline, u - j) == _add(polyline.points[v - j], offset):
                i_a = j
            else:
                break
        cap_b = min(v - 1, -((u - v - ell) // 2) - 1)  # ceil((v-u+ell)/2) - 1
        i_b = 0
        while i_b < cap_b:
            j = i_b + 1
            if _eval_int(polyline, u + j) == _add(polyline.points[v - j], offset):
                i_b = j
            else:
                break
        if i_a and i_b:
            raise InvariantError("overlap in both directions contradicts injectivity")
        if i_a:
            kind, i = OVERLAP_SAME, i_a
        elif i_b:
            kind, i = OVERLAP_OPPOSITE, i_b
        else:
            kind, i = SIMPLE, 0
        scored.append((v, u, i, kind))

    scored.sort(key=lambda c: (c[0], c[1], c[2]))
    for v, u, i, kind in scored:
        s = v - i
        before = _g_eval(polyline, offset, Fraction(2 * s - 1, 2))
        after = _g_eval(polyline, offset, Fraction(2 * v + 1, 2))
        side_before = curve.side_of(before)
        side_after = curve.side_of(after)
        if PeriodicCurve.ON in (side_before, side_after):
            continue
        if side_before != side_after:
            return CrossingPair(Fraction(u), Fraction(v), kind, i)
    return None


def _crossing_general(
    polyline: LatticePolyline, curve: PeriodicCurve, offset
) -> CrossingPair | None:
    """Simple crossings for general integer-breakpoint polylines.

    Contacts are enumerated by exact segment intersection between two periods
    of the curve and one period of its translate.  Overlapping contacts are
    only classified for breakpoint-aligned (lattice) inputs, which is the
    only place they can arise in this package's pipelines.
    """
    ell = polyline.period_length
    f_segs: list[tuple[int, Point, Point]] = []
    for k in (0, 1):
        for idx, (a, b) in enumerate(_segments_of_copy(polyline, k)):
            f_segs.append((k * ell + idx, a, b))
    g_pts = [_add(p, offset) for p in polyline.points]
    g_segs = list(enumerate(zip(g_pts, g_pts[1:])))

    contacts: list[tuple[Fraction, Fraction]] = []  # (v, u)
    saw_overlap = False
    for j, (ga, gb) in g_segs:
        for base_u, fa, fb in f_segs:
            kind, data = segment_intersection(fa, fb, ga, gb)
            if kind == "none":
                continue
            if kind == "overlap":
                saw_overlap = True
                continue
            _, s, t = data
            u = base_u + s
            v = j + t
            if 0 < v < ell and v < u < v + ell:
                contacts.append((v, u))
    contacts = sorted(set(contacts))
    events = sorted({Fraction(i) for i in range(ell + 1)} | {v for v, _ in contacts})

    for v, u in contacts:
        idx = events.index(v)
        prev_evt = events[idx - 1] if idx > 0 else Fraction(0)
        next_evt = events[idx + 1] if idx + 1 < len(events) else Fraction(ell)
        h_before = (v - prev_evt) / 2
        h_after = (next_evt - v) / 2
        if h_before <= 0 or h_after <= 0:
            continue
        before = _g_eval(polyline, offset, v - h_before)
        after = _g_eval(polyline, offset, v + h_after)
        side_before = curve.side_of(before)
        side_after = curve.side_of(after)
        if PeriodicCurve.ON in (side_before, side_after):
            continue
        if side_before != side_after:
            return CrossingPair(u, v, SIMPLE, 0)
    if saw_overlap:
        raise InvariantError(
            "overlapping contacts on a non-unit-move polyline are not supported"
        )
    return None
