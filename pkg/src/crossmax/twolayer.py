"""Two-layer drawings of bipartite graphs.

A separated convex drawing is equivalent to placing the two color classes on
two parallel lines; a pair of independent edges crosses exactly when the top
and bottom orders disagree on it.  Reversing the bottom order therefore turns
crossings into non-crossings and vice versa, which links maximum separated
convex drawings to classical two-layer crossing minimization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph, GraphError, SizeBoundExceeded, bipartition, independent_pair_weight
from .convex import convex_crossing_value


class NotBipartiteError(GraphError):
    pass


@dataclass(frozen=True)
class TwoLayerDrawing:
    top: tuple[int, ...]
    bottom: tuple[int, ...]


def _validate_drawing(g: Graph, d: TwoLayerDrawing) -> None:
    seen = sorted(d.top + d.bottom)
    if seen != list(range(g.n)):
        raise NotBipartiteError("top and bottom must partition the vertex set")
    top = set(d.top)
    for u, v in g.edges:
        if (u in top) == (v in top):
            raise NotBipartiteError(f"edge ({u},{v}) does not cross the layers")


def two_layer_crossings(g: Graph, d: TwoLayerDrawing) -> Fraction:
    """Weighted number of crossing pairs in the two-layer drawing."""
    _validate_drawing(g, d)
    tpos = {v: i for i, v in enumerate(d.top)}
    bpos = {v: i for i, v in enumerate(d.bottom)}
    top = set(d.top)
    total = Fraction(0)
    for i, j in g.independent_edge_pairs():
        u1, v1 = g.edges[i]
        if u1 not in top:
            u1, v1 = v1, u1
        u2, v2 = g.edges[j]
        if u2 not in top:
            u2, v2 = v2, u2
        if (tpos[u1] - tpos[u2]) * (bpos[v1] - bpos[v2]) < 0:
            total += g.weights[i] * g.weights[j]
    return total


def separated_circular_order(d: TwoLayerDrawing) -> tuple[int, ...]:
    """The convex order equivalent to the two-layer drawing: top left-to-right,
    then bottom right-to-left."""
    return tuple(d.top) + tuple(reversed(d.bottom))


def _sides(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    split = bipartition(g)
    if split is None:
        raise NotBipartiteError("graph is not bipartite")
    return split


def _pair_cost_table(g: Graph, fixed: tuple[int, ...], free: tuple[int, ...]):
    """cost[u][v] = weighted crossings among (edge at u, edge at v) pairs when
    free vertex u is placed before free vertex v."""
    fpos = {v: i for i, v in enumerate(fixed)}
    adj: dict[int, list[tuple[int, Fraction]]] = {v: [] for v in free}
    wmap = {}
    for (a, b), w in zip(g.edges, g.weights):
        wmap[(a, b)] = w
        wmap[(b, a)] = w
        if a in adj:
            adj[a].append((b, w))
        if b in adj:
            adj[b].append((a, w))
    cost: dict[int, dict[int, Fraction]] = {u: {} for u in free}
    for u in free:
        for v in free:
            if u == v:
                continue
            c = Fraction(0)
            for x, wu in adj[u]:
                for y, wv in adj[v]:
                    if x != y and fpos[x] > fpos[y]:
                        c += wu * wv
            cost[u][v] = c
    return cost


def _min_free_side(cost, free: tuple[int, ...]) -> tuple[Fraction, tuple[int, ...]]:
    """Exact one-sided minimum via subset DP, reconstructing the
    lexicographically smallest optimal order of the free side."""
    k = len(free)
    if k == 0:
        return Fraction(0), ()
    idx = {v: i for i, v in enumerate(free)}
    full = (1 << k) - 1
    # h[S] = optimal cost of arranging the set S after everything else is fixed;
    # placing v first costs sum of cost[v][u] for the rest of S.
    h: list[Fraction] = [Fraction(0)] * (1 << k)
    for s in range(1, 1 << k):
        best = None
        members = [v for v in free if s & (1 << idx[v])]
        for v in members:
            rest = s & ~(1 << idx[v])
            c = sum((cost[v][u] for u in members if u != v), Fraction(0)) + h[rest]
            if best is None or c < best:
                best = c
        h[s] = best if best is not None else Fraction(0)
    # lexicographically smallest reconstruction
    order = []
    s = full
    while s:
        members = [v for v in free if s & (1 << idx[v])]
        for v in sorted(members):
            rest = s & ~(1 << idx[v])
            c = sum((cost[v][u] for u in members if u != v), Fraction(0)) + h[rest]
            if c == h[s]:
                order.append(v)
                s = rest
                break
    return h[full], tuple(order)


def one_sided_min(g: Graph, top_order) -> tuple[Fraction, TwoLayerDrawing]:
    """Exact two-layer minimum with the top order prescribed (free side solved
    by subset DP); the comparison oracle for the median heuristic."""
    side0, side1 = _sides(g)
    top_order = tuple(top_order)
    if sorted(top_order) == sorted(side0):
        free = side1
    elif sorted(top_order) == sorted(side1):
        free = side0
    else:
        raise NotBipartiteError("top order is not one side of the bipartition")
    cost = _pair_cost_table(g, top_order, free)
    val, bottom = _min_free_side(cost, free)
    return val, TwoLayerDrawing(top=top_order, bottom=bottom)


def bcr_exact(g: Graph, max_side: int = 9) -> tuple[Fraction, TwoLayerDrawing]:
    """Minimum two-layer crossings over both orders.

    The top side is enumerated exhaustively (lexicographic order) and the
    bottom side is solved by subset DP, so ties resolve to the
    lexicographically smallest (top, bottom).  Exponential in the side sizes;
    meant for desk-scale instances.
    """
    side0, side1 = _sides(g)
    if len(side0) > max_side or len(side1) > max_side:
        raise SizeBoundExceeded(f"side sizes {len(side0)},{len(side1)} exceed bound {max_side}")
    best: tuple[Fraction, TwoLayerDrawing] | None = None
    for top in itertools.permutations(side0):
        cost = _pair_cost_table(g, top, side1)
        val, bottom = _min_free_side(cost, side1)
        if best is None or val < best[0]:
            best = (val, TwoLayerDrawing(top=top, bottom=bottom))
    assert best is not None
    cross = two_layer_crossings(g, best[1])
    assert cross == best[0]
    return best


def max_separated_convex(g: Graph, max_side: int = 9) -> tuple[Fraction, TwoLayerDrawing]:
    """Maximum crossings over separated convex drawings: M(G) - bcr(G),
    attained by reversing the bottom order of a bcr-optimal drawing."""
    m_total = independent_pair_weight(g)
    bcr, d = bcr_exact(g, max_side=max_side)
    flipped = TwoLayerDrawing(top=d.top, bottom=tuple(reversed(d.bottom)))
    val = two_layer_crossings(g, flipped)
    assert val == m_total - bcr
    assert convex_crossing_value(g, separated_circular_order(flipped)) == val
    return val, flipped


def median_heuristic(g: Graph, top_order) -> TwoLayerDrawing:
    """Classical one-sided median heuristic (3-approximation).

    Bottom vertices sort by the left median of their neighbor positions in the
    fixed top order; within equal medians odd degree precedes even degree,
    then vertex id.  Isolated bottom vertices go last.
    """
    side0, side1 = _sides(g)
    top_order = tuple(top_order)
    if sorted(top_order) == sorted(side0):
        free = side1
    elif sorted(top_order) == sorted(side1):
        free = side0
    else:
        raise NotBipartiteError("top order is not one side of the bipartition")
    tpos = {v: i for i, v in enumerate(top_order)}
    adj = g.adjacency()

    def key(v: int):
        positions = sorted(tpos[u] for u in adj[v])
        if not positions:
            return (1, 0, 0, v)
        med = positions[(len(positions) - 1) // 2]
        parity = 0 if len(positions) % 2 == 1 else 1
        return (0, med, parity, v)

    bottom = tuple(sorted(free, key=key))
    return TwoLayerDrawing(top=top_order, bottom=bottom)
