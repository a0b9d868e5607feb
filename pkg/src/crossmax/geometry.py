"""Straight-line drawings with exact rational coordinates.

All predicates are sign computations on rational determinants; there are no
epsilons anywhere.  Drawings are tuples of (x, y) Fractions indexed by vertex.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph, GraphError, independent_pair_weight
from .convex import ConvexResult, canonicalize_order, convex_crossing_value, greedy_derandomized

Point = tuple[Fraction, Fraction]
PointDrawing = tuple[Point, ...]


class InvalidDrawingError(GraphError):
    pass


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the signed area of triangle abc: +1 ccw, -1 cw, 0 collinear."""
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (det > 0) - (det < 0)


def _strictly_between(a: Point, b: Point, x: Point) -> bool:
    """x lies in the open segment (a, b); assumes a, b, x collinear."""
    if a[0] != b[0]:
        lo, hi = min(a[0], b[0]), max(a[0], b[0])
        return lo < x[0] < hi
    lo, hi = min(a[1], b[1]), max(a[1], b[1])
    return lo < x[1] < hi


def segments_properly_cross(p1: Point, q1: Point, p2: Point, q2: Point) -> bool:
    """Open segments share exactly one interior point (no endpoint contact)."""
    d1 = orient(p2, q2, p1)
    d2 = orient(p2, q2, q1)
    d3 = orient(p1, q1, p2)
    d4 = orient(p1, q1, q2)
    return d1 * d2 < 0 and d3 * d4 < 0


def crossing_point(p1: Point, q1: Point, p2: Point, q2: Point) -> Point:
    """Exact intersection point of two properly crossing segments."""
    x1, y1 = p1
    x2, y2 = q1
    x3, y3 = p2
    x4, y4 = q2
    denom = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4)
    t = ((x1 - x3) * (y3 - y4) - (y1 - y3) * (x3 - x4)) / denom
    return (x1 + t * (x2 - x1), y1 + t * (y2 - y1))


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


def as_drawing(coords) -> PointDrawing:
    return tuple((Fraction(x), Fraction(y)) for x, y in coords)


def validate_drawing(g: Graph, d: PointDrawing) -> list[Violation]:
    """All validity violations: coincident points, vertices inside foreign
    edges, overlapping edges and triple crossing points."""
    if len(d) != g.n:
        raise GraphError("drawing must supply coordinates for every vertex")
    out: list[Violation] = []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if d[u] == d[v]:
                out.append(Violation("coincident-points", f"vertices {u} and {v}"))
    for ei, (a, b) in enumerate(g.edges):
        for v in range(g.n):
            if v in (a, b):
                continue
            if orient(d[a], d[b], d[v]) == 0 and _strictly_between(d[a], d[b], d[v]):
                out.append(Violation("vertex-on-edge", f"vertex {v} inside edge {(a, b)}"))
    for i in range(g.m):
        a, b = g.edges[i]
        for j in range(i + 1, g.m):
            c, e = g.edges[j]
            if orient(d[a], d[b], d[c]) == 0 and orient(d[a], d[b], d[e]) == 0:
                # collinear pair; any shared stretch means overlap
                pts = sorted([d[a], d[b]])
                qts = sorted([d[c], d[e]])
                if max(pts[0], qts[0]) < min(pts[1], qts[1]):
                    out.append(Violation("edge-overlap", f"edges {(a, b)} and {(c, e)}"))
    seen: dict[Point, set[int]] = {}
    for i in range(g.m):
        a, b = g.edges[i]
        for j in range(i + 1, g.m):
            c, e = g.edges[j]
            if len({a, b, c, e}) < 4:
                continue
            if segments_properly_cross(d[a], d[b], d[c], d[e]):
                pt = crossing_point(d[a], d[b], d[c], d[e])
                seen.setdefault(pt, set()).update((i, j))
    for pt, edge_ids in seen.items():
        if len(edge_ids) >= 3:
            out.append(
                Violation("triple-point", f"edges {sorted(edge_ids)} concurrent at {pt}")
            )
    return out


def count_straight_crossings(g: Graph, d: PointDrawing) -> Fraction:
    """Weighted crossing count of a valid straight-line drawing."""
    violations = validate_drawing(g, d)
    if violations:
        raise InvalidDrawingError("; ".join(f"{v.kind}: {v.detail}" for v in violations))
    return _count_crossings_unchecked(g, d)


def _count_crossings_unchecked(g: Graph, d: PointDrawing) -> Fraction:
    total = Fraction(0)
    for i, j in g.independent_edge_pairs():
        a, b = g.edges[i]
        c, e = g.edges[j]
        if segments_properly_cross(d[a], d[b], d[c], d[e]):
            total += g.weights[i] * g.weights[j]
    return total


def drawing_loss(g: Graph, d: PointDrawing) -> Fraction:
    return independent_pair_weight(g) - count_straight_crossings(g, d)


# ---------------------------------------------------------------------------
# convex placement
# ---------------------------------------------------------------------------

def rational_circle_points(n: int, denom: int = 64) -> list[Point]:
    """n distinct rational points on the unit circle in counterclockwise order.

    Uses the tangent half-angle parametrization (1-t^2, 2t)/(1+t^2) at rational
    t, so the points are exactly on the circle and exactly in convex position.
    """
    ts: list[Fraction] = []
    for i in range(n):
        theta = math.pi * (2 * i + 1 - n) / (2 * n)
        ts.append(Fraction(round(math.tan(theta) * denom), denom))
    if any(ts[i] >= ts[i + 1] for i in range(n - 1)):
        raise GraphError(f"denominator {denom} too coarse for {n} circle points")
    pts = []
    for t in ts:
        den = 1 + t * t
        pts.append(((1 - t * t) / den, 2 * t / den))
    return pts


def convex_order_to_drawing(order, denom: int = 64) -> PointDrawing:
    """Exact convex-position drawing realizing the circular order.

    Points sit on the unit circle, so crossings coincide exactly with order
    alternation.  Use convex_drawing_for_graph when the drawing must also
    avoid triple points among a specific graph's chords.
    """
    order = tuple(order)
    n = len(order)
    pts = rational_circle_points(n, denom) if n else []
    d: list[Point] = [(Fraction(0), Fraction(0))] * n
    for i, v in enumerate(order):
        d[v] = pts[i]
    return tuple(d)


def convex_drawing_for_graph(g: Graph, order, denom: int = 64) -> PointDrawing:
    """Convex drawing of the order, retried until it validates for g."""
    order = tuple(order)
    n = len(order)
    last: list[Violation] = []
    for attempt in range(10):
        pts = rational_circle_points(max(n, 1), denom * (2**attempt) + attempt) if n else []
        d: list[Point] = [(Fraction(0), Fraction(0))] * n
        for i, v in enumerate(order):
            d[v] = pts[i]
        probe = tuple(d)
        last = validate_drawing(g, probe)
        if not last:
            assert _count_crossings_unchecked(g, probe) == convex_crossing_value(g, order)
            return probe
    raise InvalidDrawingError(f"convex placement failed: {last}")


# ---------------------------------------------------------------------------
# local search
# ---------------------------------------------------------------------------

def _vertex_crossing_weight(g: Graph, d: list[Point], v: int) -> Fraction:
    """Crossing weight of pairs involving an edge at v (each such pair once)."""
    total = Fraction(0)
    for i in range(g.m):
        a, b = g.edges[i]
        if v not in (a, b):
            continue
        for j in range(g.m):
            c, e = g.edges[j]
            if len({a, b, c, e}) < 4:
                continue
            if v in (c, e) and j < i:
                continue  # count pairs with both edges at v once
            if segments_properly_cross(d[a], d[b], d[c], d[e]):
                total += g.weights[i] * g.weights[j]
    return total


def _placement_valid(g: Graph, d: list[Point]) -> bool:
    return not validate_drawing(g, tuple(d))


def local_search_mrcr(
    g: Graph,
    seed: int = 0,
    restarts: int = 4,
    grid: int | None = None,
    max_rounds: int = 50,
) -> tuple[PointDrawing, Fraction]:
    """Heuristic straight-line maximizer: seeded grid placements improved by
    single-vertex relocation, always including a convex start, so the result
    is at least the best convex-order start."""
    if grid is None:
        grid = max(8, 2 * g.n)
    rng = random.Random(seed)
    starts: list[PointDrawing] = []
    if g.n > 0:
        greedy_order = greedy_derandomized(g).order
        starts.append(convex_drawing_for_graph(g, greedy_order))
        starts.append(convex_drawing_for_graph(g, range(g.n)))
    while len(starts) < max(restarts, 2):
        pts: list[Point] = []
        used = set()
        ok = True
        d_try: list[Point] = []
        for _ in range(g.n):
            for _attempt in range(200):
                p = (Fraction(rng.randrange(grid)), Fraction(rng.randrange(grid)))
                if p not in used:
                    cand = d_try + [p]
                    used.add(p)
                    d_try = cand
                    break
            else:
                ok = False
                break
        if not ok or len(d_try) != g.n:
            continue
        if _placement_valid(g, d_try):
            starts.append(tuple(d_try))
        else:
            # resample offending vertices a few times, else skip this start
            repaired = _repair(g, d_try, rng, grid)
            if repaired is not None:
                starts.append(tuple(repaired))

    best_d: PointDrawing | None = None
    best_val = Fraction(-1)
    for start in starts:
        d, val = _hill_climb(g, list(start), grid, max_rounds)
        key = tuple(d)
        if val > best_val or (val == best_val and (best_d is None or key < best_d)):
            best_val = val
            best_d = key
    assert best_d is not None
    return best_d, best_val


def _repair(g: Graph, d: list[Point], rng: random.Random, grid: int):
    for _ in range(50):
        violations = validate_drawing(g, tuple(d))
        if not violations:
            return d
        # move one vertex mentioned in the first violation
        detail = violations[0].detail
        v = None
        for tok in detail.replace("(", " ").replace(")", " ").replace(",", " ").split():
            if tok.isdigit():
                v = int(tok)
                break
        if v is None or v >= g.n:
            return None
        d[v] = (Fraction(rng.randrange(grid)), Fraction(rng.randrange(grid)))
    return None


def _hill_climb(g: Graph, d: list[Point], grid: int, max_rounds: int):
    val = _count_crossings_unchecked(g, d)
    for _ in range(max_rounds):
        improved = False
        for v in range(g.n):
            old = d[v]
            base = val - _vertex_crossing_weight(g, d, v)
            best_pt = old
            best_val = val
            for x in range(grid):
                for y in range(grid):
                    p = (Fraction(x), Fraction(y))
                    if p == old:
                        continue
                    d[v] = p
                    if not _placement_valid(g, d):
                        continue
                    cand = base + _vertex_crossing_weight(g, d, v)
                    if cand > best_val or (cand == best_val and p < best_pt):
                        if cand > best_val:
                            best_val = cand
                            best_pt = p
            d[v] = best_pt
            if best_val > val:
                val = best_val
                improved = True
        if not improved:
            break
    return d, val


# ---------------------------------------------------------------------------
# SVG export
# ---------------------------------------------------------------------------

def svg_export(g: Graph, d: PointDrawing, path: str) -> str:
    """Deterministic SVG of a valid drawing with the crossing count captioned."""
    value = count_straight_crossings(g, d)
    xs = [float(p[0]) for p in d] or [0.0]
    ys = [float(p[1]) for p in d] or [0.0]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    scale = 400.0 / span
    pad = 40.0

    def sx(p: Point) -> float:
        return (float(p[0]) - min(xs)) * scale + pad

    def sy(p: Point) -> float:
        return (max(ys) - float(p[1])) * scale + pad

    w = (max(xs) - min(xs)) * scale + 2 * pad
    h = (max(ys) - min(ys)) * scale + 2 * pad + 24
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1f}" height="{h:.1f}" '
        f'viewBox="0 0 {w:.1f} {h:.1f}">',
    ]
    for u, v in g.edges:
        lines.append(
            f'  <line x1="{sx(d[u]):.2f}" y1="{sy(d[u]):.2f}" '
            f'x2="{sx(d[v]):.2f}" y2="{sy(d[v]):.2f}" stroke="black" stroke-width="1.2"/>'
        )
    for v in range(g.n):
        lines.append(
            f'  <circle cx="{sx(d[v]):.2f}" cy="{sy(d[v]):.2f}" r="6" '
            f'fill="white" stroke="black"/>'
        )
        lines.append(
            f'  <text x="{sx(d[v]):.2f}" y="{sy(d[v]) + 3.5:.2f}" font-size="9" '
            f'text-anchor="middle" font-family="monospace">{v}</text>'
        )
    lines.append(
        f'  <text class="caption" x="{pad:.1f}" y="{h - 8:.1f}" font-size="13" '
        f'font-family="monospace">crossings: {value}</text>'
    )
    lines.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


# ---------------------------------------------------------------------------
# coordinate files
# ---------------------------------------------------------------------------

def parse_coords(text: str, n: int) -> PointDrawing:
    """Coordinate file: one line per vertex `v x y`, rationals allowed."""
    pts: dict[int, Point] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphError(f"coords line {lineno}: expected 'v x y'")
        v = int(parts[0])
        if not 0 <= v < n:
            raise GraphError(f"coords line {lineno}: vertex {v} out of range")
        if v in pts:
            raise GraphError(f"coords line {lineno}: duplicate vertex {v}")
        pts[v] = (Fraction(parts[1]), Fraction(parts[2]))
    if len(pts) != n:
        raise GraphError(f"coords cover {len(pts)} of {n} vertices")
    return tuple(pts[v] for v in range(n))


def write_coords(d: PointDrawing) -> str:
    return "\n".join(f"{v} {p[0]} {p[1]}" for v, p in enumerate(d)) + "\n"
