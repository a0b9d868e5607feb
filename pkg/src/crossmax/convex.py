"""Crossing maximization over circular vertex orders.

In convex position a pair of independent edges crosses exactly when its four
endpoints alternate around the hull, so the whole setting reduces to cyclic
permutations.  The solver enumerates canonical orders (vertex 0 first,
reflection resolved by comparing the second and last entries) with
branch-and-bound; the optimistic bound charges every pair that is not yet
fully placed at its full weight.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm

from .graphs import Graph, GraphError, SizeBoundExceeded, TwinPartition, independent_pair_weight


class NotAPermutationError(GraphError):
    pass


class SolverTimeout(Exception):
    pass


@dataclass(frozen=True)
class ConvexResult:
    value: Fraction
    order: tuple[int, ...]
    loss: Fraction
    nodes_explored: int
    optimal: bool = True
    mean: Fraction | None = None


@dataclass(frozen=True)
class ContractedInstance:
    graph: Graph
    constant: Fraction
    classes: tuple[tuple[int, ...], ...]  # contracted vertex -> original members


# ---------------------------------------------------------------------------
# circular orders
# ---------------------------------------------------------------------------

def canonicalize_order(order) -> tuple[int, ...]:
    """Rotate vertex 0 to the front, then reflect so order[1] < order[-1]."""
    order = tuple(order)
    n = len(order)
    if n == 0:
        return ()
    i = order.index(0)
    rot = order[i:] + order[:i]
    if n >= 3 and rot[1] > rot[-1]:
        rot = (rot[0],) + tuple(reversed(rot[1:]))
    return rot


def canonical_orders(n: int):
    """All canonical circular orders of 0..n-1, in lexicographic order."""
    if n <= 2:
        yield tuple(range(n))
        return
    for perm in itertools.permutations(range(1, n)):
        if perm[0] < perm[-1]:
            yield (0,) + perm


def _check_permutation(n: int, order) -> tuple[int, ...]:
    order = tuple(order)
    if sorted(order) != list(range(n)):
        raise NotAPermutationError(f"order {order} is not a permutation of 0..{n - 1}")
    return order


def alternates(pos: list[int], e: tuple[int, int], f: tuple[int, int]) -> bool:
    """Do the endpoints of e and f alternate in the cyclic order given by pos?"""
    a, b = pos[e[0]], pos[e[1]]
    if a > b:
        a, b = b, a
    c, d = pos[f[0]], pos[f[1]]
    return (a < c < b) != (a < d < b)


def convex_crossing_value(g: Graph, order) -> Fraction:
    """Weighted crossing count of the convex drawing with this circular order."""
    order = _check_permutation(g.n, order)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    total = Fraction(0)
    for i, j in g.independent_edge_pairs():
        if alternates(pos, g.edges[i], g.edges[j]):
            total += g.weights[i] * g.weights[j]
    return total


# ---------------------------------------------------------------------------
# exact maximization
# ---------------------------------------------------------------------------

def _int_scaled_weights(g: Graph) -> tuple[list[int], int]:
    scale = lcm(*[w.denominator for w in g.weights]) if g.m else 1
    return [int(w * scale) for w in g.weights], scale


def mccr_exhaustive(g: Graph) -> ConvexResult:
    """Plain enumeration over canonical orders; reference oracle for tests."""
    m_total = independent_pair_weight(g)
    best_val: Fraction | None = None
    best_order: tuple[int, ...] = tuple(range(g.n))
    nodes = 0
    for order in canonical_orders(g.n):
        nodes += 1
        val = convex_crossing_value(g, order)
        if best_val is None or val > best_val:
            best_val = val
            best_order = order
    if best_val is None:
        best_val = Fraction(0)
    return ConvexResult(value=best_val, order=best_order, loss=m_total - best_val, nodes_explored=nodes)


def mccr_exact(
    g: Graph,
    *,
    max_n: int | None = None,
    unbounded: bool = False,
    timeout_ms: int | None = None,
    threads: int = 1,
) -> ConvexResult:
    """Maximum convex crossing value, exact, with the canonical-order search.

    Returns the lexicographically smallest optimal canonical order.  On
    timeout the best order seen so far is returned with optimal=False.
    `threads` is accepted for interface compatibility; the search is
    sequential and its result does not depend on it.
    """
    del threads
    if max_n is None:
        max_n = 13 if g.is_unit_weighted() else 11
    if not unbounded and g.n > max_n:
        raise SizeBoundExceeded(f"n={g.n} exceeds solver bound {max_n}; pass unbounded to override")

    n = g.n
    m_total = independent_pair_weight(g)
    if n <= 3 or g.m < 2:
        order = canonicalize_order(range(n))
        return ConvexResult(value=Fraction(0), order=order, loss=m_total, nodes_explored=1)

    wint, scale = _int_scaled_weights(g)
    pair_scale = scale * scale
    edges = g.edges
    m = g.m
    incident: list[list[int]] = [[] for _ in range(n)]
    for idx, (u, v) in enumerate(edges):
        incident[u].append(idx)
        incident[v].append(idx)
    pairs = g.independent_edge_pairs()
    pair_w = {}
    for i, j in pairs:
        pair_w[(i, j)] = wint[i] * wint[j]
        pair_w[(j, i)] = pair_w[(i, j)]
    disjoint = [[False] * m for _ in range(m)]
    for i, j in pairs:
        disjoint[i][j] = disjoint[j][i] = True
    total_int = sum(pair_w[p] for p in pairs) if pairs else 0
    assert Fraction(total_int, pair_scale) == m_total

    # Incumbent seeded one below the identity order's value so equal-value
    # branches stay open and the first (lexicographically smallest) optimum
    # found is kept.
    identity = canonicalize_order(range(n))
    ident_val_int = int(convex_crossing_value(g, identity) * pair_scale)

    pos = [-1] * n
    order = [0] * n
    placed_count = [0] * m  # endpoints placed per edge
    fully_placed: list[int] = []
    deadline = time.monotonic() + timeout_ms / 1000.0 if timeout_ms is not None else None

    best_value = ident_val_int - 1
    best_order: tuple[int, ...] | None = None
    nodes = 0
    timed_out = False

    def place(v: int, slot: int) -> tuple[int, int]:
        """Returns (value gained, undecided weight retired) for placing v."""
        pos[v] = slot
        order[slot] = v
        gained = 0
        retired = 0
        new_full = []
        for e in incident[v]:
            placed_count[e] += 1
            if placed_count[e] == 2:
                new_full.append(e)
        for e in new_full:
            for f in fully_placed:
                if disjoint[e][f]:
                    w = pair_w[(e, f)]
                    retired += w
                    if alternates(pos, edges[e], edges[f]):
                        gained += w
            fully_placed.append(e)
        return gained, retired

    def unplace(v: int) -> None:
        for e in incident[v]:
            if placed_count[e] == 2:
                fully_placed.remove(e)
            placed_count[e] -= 1
        pos[v] = -1

    def dfs(slot: int, value: int, undecided: int) -> None:
        nonlocal best_value, best_order, nodes, timed_out
        nodes += 1
        if deadline is not None and nodes % 2048 == 0 and time.monotonic() > deadline:
            timed_out = True
            raise SolverTimeout
        if slot == n:
            if value > best_value:
                best_value = value
                best_order = tuple(order)
            return
        last = slot == n - 1
        for v in range(1, n):
            if pos[v] != -1:
                continue
            if last and v < order[1]:
                continue  # reflection symmetry: require order[1] < order[n-1]
            gained, retired = place(v, slot)
            new_value = value + gained
            new_undecided = undecided - retired
            if new_value + new_undecided > best_value:
                dfs(slot + 1, new_value, new_undecided)
            unplace(v)

    place(0, 0)
    try:
        dfs(1, 0, total_int)
    except SolverTimeout:
        pass

    if best_order is None:
        best_order = identity
        best_value = ident_val_int
    optimal = not timed_out
    value = Fraction(best_value, pair_scale)
    # pair-scan cross-check of the incremental bookkeeping
    assert convex_crossing_value(g, best_order) == value
    return ConvexResult(
        value=value,
        order=best_order,
        loss=m_total - value,
        nodes_explored=nodes,
        optimal=optimal,
    )


# ---------------------------------------------------------------------------
# twin contraction
# ---------------------------------------------------------------------------

class ContractionUnsound(GraphError):
    pass


def contract_twins(g: Graph, partition: TwinPartition) -> ContractedInstance:
    """Collapse each non-singleton twin class to one weighted vertex.

    Precondition: unit weights, every class a twin set, and no selected class
    adjacent to a selected class.  The returned instance satisfies
    mccr(g) = mccr(contracted) + constant with
    constant = sum over classes of C(|class|,2) * C(|N(class)|,2).
    """
    if not g.is_unit_weighted():
        raise ContractionUnsound("contraction requires unit weights")
    adj = g.adjacency()
    classes = partition.classes
    covered = sorted(v for c in classes for v in c)
    if covered != list(range(g.n)):
        raise ContractionUnsound("partition must cover all vertices exactly once")
    selected = [c for c in classes if len(c) > 1]
    selected_members = {v for c in selected for v in c}
    for c in selected:
        nbhd = adj[c[0]]
        for v in c[1:]:
            if adj[v] != nbhd:
                raise ContractionUnsound(f"class {c} is not a twin set")
        if nbhd & selected_members:
            raise ContractionUnsound(
                f"contraction unsound here: class {c} is adjacent to a selected class"
            )

    ordered = sorted(classes, key=lambda c: c[0])
    rep_of = {}
    for new_id, cls in enumerate(ordered):
        for v in cls:
            rep_of[v] = new_id
    edge_weight: dict[tuple[int, int], int] = {}
    for u, v in g.edges:
        a, b = rep_of[u], rep_of[v]
        if a > b:
            a, b = b, a
        edge_weight[(a, b)] = edge_weight.get((a, b), 0) + 1
    for (a, b), w in edge_weight.items():
        expect = len(ordered[a]) * len(ordered[b])
        if w != expect:
            raise ContractionUnsound(
                f"classes {ordered[a]} and {ordered[b]} are not completely joined"
            )
    contracted = Graph.from_edges(
        len(ordered),
        list(edge_weight.keys()),
        [Fraction(w) for w in edge_weight.values()],
    )
    constant = Fraction(0)
    for c in selected:
        constant += comb(len(c), 2) * comb(len(adj[c[0]]), 2)
    return ContractedInstance(graph=contracted, constant=constant, classes=tuple(ordered))


def expand_contracted_order(inst: ContractedInstance, order) -> tuple[int, ...]:
    """Lift a circular order of the contracted graph to the original vertices,
    placing each class as a block of consecutive positions."""
    out: list[int] = []
    for cv in order:
        out.extend(inst.classes[cv])
    return tuple(out)


# ---------------------------------------------------------------------------
# randomized estimate
# ---------------------------------------------------------------------------

def estimate_random(g: Graph, samples: int, seed: int) -> ConvexResult:
    """Best of `samples` uniformly random circular orders, plus the exact mean."""
    if samples < 1:
        raise GraphError("samples must be >= 1")
    rng = random.Random(seed)
    m_total = independent_pair_weight(g)
    best_val: Fraction | None = None
    best_order: tuple[int, ...] = tuple(range(g.n))
    acc = Fraction(0)
    for _ in range(samples):
        perm = list(range(g.n))
        rng.shuffle(perm)
        val = convex_crossing_value(g, perm)
        acc += val
        if best_val is None or val > best_val:
            best_val = val
            best_order = canonicalize_order(perm)
    assert best_val is not None
    return ConvexResult(
        value=best_val,
        order=best_order,
        loss=m_total - best_val,
        nodes_explored=samples,
        mean=acc / samples,
    )


# ---------------------------------------------------------------------------
# derandomized 1/3 guarantee
# ---------------------------------------------------------------------------

def _arc_gap_count(arrangement: list[int], iu: int, ix: int, avoid: int) -> int:
    """Gaps strictly inside the arc from index iu to index ix that does not
    contain index `avoid`.  An arc holding q placed vertices has q+1 gaps."""
    s = len(arrangement)
    q_forward = (ix - iu - 1) % s
    # walk forward from iu to ix; does it pass `avoid`?
    if (avoid - iu) % s < (ix - iu) % s:
        # avoid lies on the forward arc, use the backward one
        q = s - 2 - q_forward
    else:
        q = q_forward
    return q + 1


def _pair_probability(
    arrangement: list[int], index_of: dict[int, int], e1: tuple[int, int], e2: tuple[int, int]
) -> Fraction:
    """P(e1 and e2 cross) when the remaining vertices are inserted uniformly
    at random into the gaps of the current circular arrangement."""
    s = len(arrangement)
    placed1 = [v for v in e1 if v in index_of]
    placed2 = [v for v in e2 if v in index_of]
    k = len(placed1) + len(placed2)
    if k <= 1 or s < 2:
        return Fraction(1, 3)
    pos = index_of
    if k == 4:
        a, b = sorted((pos[e1[0]], pos[e1[1]]))
        c, d = pos[e2[0]], pos[e2[1]]
        return Fraction(1) if (a < c < b) != (a < d < b) else Fraction(0)
    if k == 3:
        if len(placed1) == 1:
            e1, e2 = e2, e1
            placed1, placed2 = placed2, placed1
        # e1 fully placed, e2 has one free endpoint
        anchor = placed2[0]
        gaps = _arc_gap_count(arrangement, pos[e1[0]], pos[e1[1]], pos[anchor])
        return Fraction(gaps, s)
    # k == 2
    if len(placed1) == 2 or len(placed2) == 2:
        chord = placed1 if len(placed1) == 2 else placed2
        iu, ix = pos[chord[0]], pos[chord[1]]
        q = (ix - iu - 1) % s
        g_a = q + 1
        g_b = s - g_a
        return Fraction(2 * g_a * g_b, s * (s + 1))
    # one endpoint of each edge placed
    iu, ix = pos[placed1[0]], pos[placed2[0]]
    q = (ix - iu - 1) % s
    x = q + 1
    y = s - x
    return Fraction(x * (x + 1) + y * (y + 1), 2 * s * (s + 1))


def _expected_value(g: Graph, arrangement: list[int]) -> Fraction:
    index_of = {v: i for i, v in enumerate(arrangement)}
    total = Fraction(0)
    for i, j in g.independent_edge_pairs():
        p = _pair_probability(arrangement, index_of, g.edges[i], g.edges[j])
        total += g.weights[i] * g.weights[j] * p
    return total


def greedy_derandomized(g: Graph) -> ConvexResult:
    """Deterministic order with value >= M(G)/3.

    Derandomizes the uniform random circular order by inserting vertices one
    at a time into the gap maximizing the exact conditional expectation of the
    final crossing count (a pair with at most one placed endpoint contributes
    one third of its weight).
    """
    m_total = independent_pair_weight(g)
    n = g.n
    if n == 0:
        return ConvexResult(value=Fraction(0), order=(), loss=m_total, nodes_explored=0)
    arrangement = [0]
    evaluations = 0
    current = m_total / 3
    for v in range(1, n):
        best_e: Fraction | None = None
        best_gap = 0
        for gap in range(len(arrangement)):
            cand = arrangement[: gap + 1] + [v] + arrangement[gap + 1 :]
            e_val = _expected_value(g, cand)
            evaluations += 1
            if best_e is None or e_val > best_e:
                best_e = e_val
                best_gap = gap
        assert best_e is not None
        if best_e < current:
            raise RuntimeError("conditional expectation decreased; derandomization bug")
        current = best_e
        arrangement = arrangement[: best_gap + 1] + [v] + arrangement[best_gap + 1 :]
    value = convex_crossing_value(g, arrangement)
    assert value == current
    assert 3 * value >= m_total
    return ConvexResult(
        value=value,
        order=canonicalize_order(arrangement),
        loss=m_total - value,
        nodes_explored=evaluations,
    )


# ---------------------------------------------------------------------------
# three-color 1/2 guarantee
# ---------------------------------------------------------------------------

class InvalidColoringError(GraphError):
    pass


def _class_pair_events(coloring, e1, e2):
    """Per color class, the (endpoint-of-e1, endpoint-of-e2) pair whose
    relative order decides the crossing.  At most two classes qualify."""
    events = {}
    for cls in set(coloring[v] for v in (*e1, *e2)):
        a = [v for v in e1 if coloring[v] == cls]
        b = [v for v in e2 if coloring[v] == cls]
        if a and b:
            events[cls] = (a[0], b[0])
    return events


def _crossing_truth(coloring, e1, e2, booleans):
    """Evaluate whether e1, e2 cross when classes occupy disjoint arcs and
    within-class orders satisfy the given before-relations."""
    endpoints = {}
    for cls in range(3):
        members = [v for v in (*e1, *e2) if coloring[v] == cls]
        members = list(dict.fromkeys(members))
        if len(members) == 2:
            a, b = tuple(sorted(members))
            if not booleans[(a, b)]:
                a, b = b, a
            endpoints[cls] = [a, b]
        else:
            endpoints[cls] = members
    cyc = endpoints.get(0, []) + endpoints.get(1, []) + endpoints.get(2, [])
    pos = {v: i for i, v in enumerate(cyc)}
    a, b = sorted((pos[e1[0]], pos[e1[1]]))
    c, d = pos[e2[0]], pos[e2[1]]
    return (a < c < b) != (a < d < b)


def threecolor_lower_bound(g: Graph, coloring) -> ConvexResult:
    """Deterministic order with value >= M(G)/2 for a given <=3-coloring.

    Color classes occupy three disjoint arcs; within each class the order is
    fixed by conditional-expectation derandomization of independent uniform
    shuffles, under which every independent pair crosses with probability 1/2.
    """
    coloring = list(coloring)
    if len(coloring) != g.n or any(c not in (0, 1, 2) for c in coloring):
        raise InvalidColoringError("coloring must assign 0..2 to every vertex")
    for u, v in g.edges:
        if coloring[u] == coloring[v]:
            raise InvalidColoringError(f"edge ({u},{v}) is monochromatic")
    m_total = independent_pair_weight(g)
    pairs = [
        (g.edges[i], g.edges[j], g.weights[i] * g.weights[j])
        for i, j in g.independent_edge_pairs()
    ]

    orders: dict[int, list[int]] = {0: [], 1: [], 2: []}

    def prob_before(a: int, b: int) -> Fraction:
        """P(a appears before b within their shared class)."""
        cls = coloring[a]
        lst = orders[cls]
        ia = lst.index(a) if a in lst else None
        ib = lst.index(b) if b in lst else None
        t = len(lst)
        if ia is not None and ib is not None:
            return Fraction(1) if ia < ib else Fraction(0)
        if ia is None and ib is None:
            return Fraction(1, 2)
        if ia is not None:
            return Fraction(t - ia, t + 1)
        return Fraction(ib + 1, t + 1)  # type: ignore[operator]

    def expected() -> Fraction:
        total = Fraction(0)
        for e1, e2, w in pairs:
            events = _class_pair_events(coloring, e1, e2)
            keys = [tuple(sorted(ev)) for ev in events.values()]
            p = Fraction(0)
            for bits in itertools.product((True, False), repeat=len(keys)):
                booleans = dict(zip(keys, bits))
                if _crossing_truth(coloring, e1, e2, booleans):
                    q = Fraction(1)
                    for key, bit in zip(keys, bits):
                        pb = prob_before(*key)
                        q *= pb if bit else 1 - pb
                    p += q
            total += w * p
        return total

    current = expected()
    assert current == m_total / 2
    for cls in range(3):
        members = sorted(v for v in range(g.n) if coloring[v] == cls)
        for v in members:
            best_e: Fraction | None = None
            best_slot = 0
            base = orders[cls]
            for slot in range(len(base) + 1):
                orders[cls] = base[:slot] + [v] + base[slot:]
                e_val = expected()
                if best_e is None or e_val > best_e:
                    best_e = e_val
                    best_slot = slot
            orders[cls] = base[:best_slot] + [v] + base[best_slot:]
            assert best_e is not None and best_e >= current
            current = best_e

    circular = orders[0] + orders[1] + orders[2]
    value = convex_crossing_value(g, circular)
    assert value == current
    assert 2 * value >= m_total
    return ConvexResult(
        value=value,
        order=canonicalize_order(circular),
        loss=m_total - value,
        nodes_explored=g.n,
    )
