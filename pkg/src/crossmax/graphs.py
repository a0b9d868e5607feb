"""Undirected simple graphs with exact rational edge weights.

Vertices are dense integers 0..n-1 so that position tables and bitmasks stay
cheap.  All quantities that feed certification paths (pair weights, cut sizes)
are Fractions, never floats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb


class GraphError(ValueError):
    pass


class GraphParseError(GraphError):
    """Parse failure; `kind` identifies the rule, `line` the offending line."""

    def __init__(self, kind: str, line: int, detail: str = ""):
        self.kind = kind
        self.line = line
        msg = f"{kind} at line {line}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NotATreeError(GraphError):
    pass


class SizeBoundExceeded(GraphError):
    pass


def _normalize_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.  `weights[i]` belongs to `edges[i]` (default 1)."""

    n: int
    edges: tuple[tuple[int, int], ...]
    weights: tuple[Fraction, ...]

    @staticmethod
    def from_edges(n: int, edges, weights=None) -> "Graph":
        norm = [_normalize_edge(int(u), int(v)) for u, v in edges]
        for u, v in norm:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"vertex id out of range in edge ({u},{v})")
        if weights is None:
            weights = [Fraction(1)] * len(norm)
        else:
            weights = [Fraction(w) for w in weights]
        if len(weights) != len(norm):
            raise GraphError("weights and edges differ in length")
        for w in weights:
            if w <= 0:
                raise GraphError(f"non-positive weight {w}")
        order = sorted(range(len(norm)), key=lambda i: norm[i])
        sorted_edges = tuple(norm[i] for i in order)
        sorted_weights = tuple(weights[i] for i in order)
        for a, b in itertools.pairwise(sorted_edges):
            if a == b:
                raise GraphError(f"duplicate edge {a}")
        return Graph(n=n, edges=sorted_edges, weights=sorted_weights)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def weight_of(self, u: int, v: int) -> Fraction:
        e = _normalize_edge(u, v)
        for f, w in zip(self.edges, self.weights):
            if f == e:
                return w
        raise GraphError(f"no edge {e}")

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in set(self.edges)

    def is_unit_weighted(self) -> bool:
        return all(w == 1 for w in self.weights)

    def independent_edge_pairs(self) -> list[tuple[int, int]]:
        """Indices (i, j), i < j, of edge pairs with no shared endpoint."""
        pairs = []
        for i in range(self.m):
            a, b = self.edges[i]
            for j in range(i + 1, self.m):
                c, d = self.edges[j]
                if a != c and a != d and b != c and b != d:
                    pairs.append((i, j))
        return pairs


# ---------------------------------------------------------------------------
# parsing / writing
# ---------------------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the graph file format: header `n m`, then m lines `u v [p/q]`.

    Lines starting with `#` are comments.  Raises GraphParseError naming the
    offending line for self-loops, duplicate edges, out-of-range vertex ids
    and non-positive weights.
    """
    lines = text.splitlines()
    header = None
    header_line = 0
    edges: list[tuple[int, int]] = []
    weights: list[Fraction] = []
    seen: dict[tuple[int, int], int] = {}
    n = m = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise GraphParseError("format", lineno, "expected 'n m' header")
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphParseError("format", lineno, "expected integers in header")
            if n < 0 or m < 0:
                raise GraphParseError("format", lineno, "negative header values")
            header = (n, m)
            header_line = lineno
            continue
        if len(parts) not in (2, 3):
            raise GraphParseError("format", lineno, "expected 'u v' or 'u v p/q'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError("format", lineno, "vertex ids must be integers")
        if u == v:
            raise GraphParseError("self-loop", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError("bad-vertex", lineno, f"vertex id outside 0..{n - 1}")
        e = _normalize_edge(u, v)
        if e in seen:
            raise GraphParseError("duplicate-edge", lineno, f"edge {e} first seen at line {seen[e]}")
        seen[e] = lineno
        if len(parts) == 3:
            try:
                w = Fraction(parts[2])
            except (ValueError, ZeroDivisionError):
                raise GraphParseError("bad-weight", lineno, f"cannot parse weight {parts[2]!r}")
            if w <= 0:
                raise GraphParseError("bad-weight", lineno, f"weight {w} not positive")
        else:
            w = Fraction(1)
        edges.append(e)
        weights.append(w)
    if header is None:
        raise GraphParseError("format", max(1, len(lines)), "missing header")
    if len(edges) != m:
        raise GraphParseError("format", header_line, f"header announces {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges, weights)


def write_graph(g: Graph) -> str:
    """Inverse of parse_graph; edges are emitted sorted lexicographically."""
    out = [f"{g.n} {g.m}"]
    for (u, v), w in zip(g.edges, g.weights):
        if w == 1:
            out.append(f"{u} {v}")
        else:
            out.append(f"{u} {v} {w}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# standard graphs
# ---------------------------------------------------------------------------

def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def star_graph(k: int) -> Graph:
    """Star with k leaves; center is vertex 0."""
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def complete_tripartite(k: int) -> Graph:
    """K_{k,k,k}; parts are 0..k-1, k..2k-1, 2k..3k-1."""
    parts = [range(k), range(k, 2 * k), range(2 * k, 3 * k)]
    edges = []
    for i in range(3):
        for j in range(i + 1, 3):
            edges.extend((u, v) for u in parts[i] for v in parts[j])
    return Graph.from_edges(3 * k, edges)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    edges = list(g.edges) + [(u + g.n, v + g.n) for u, v in h.edges]
    weights = list(g.weights) + list(h.weights)
    return Graph.from_edges(g.n + h.n, edges, weights)


# ---------------------------------------------------------------------------
# independent pair weight M(G)
# ---------------------------------------------------------------------------

def independent_pair_weight(g: Graph) -> Fraction:
    """Total weight of independent edge pairs: sum of w(e)w(e') over disjoint pairs.

    Computed twice (closed form and direct enumeration) and cross-checked, as a
    permanent internal consistency guard.
    """
    enumerated = Fraction(0)
    for i, j in g.independent_edge_pairs():
        enumerated += g.weights[i] * g.weights[j]

    # Closed form: all unordered pairs minus pairs sharing a vertex.  Two
    # distinct edges of a simple graph share at most one vertex, so adjacent
    # pairs are counted exactly once by summing over vertices.
    total = sum(g.weights, Fraction(0))
    sq = sum((w * w for w in g.weights), Fraction(0))
    all_pairs = (total * total - sq) / 2
    adjacent = Fraction(0)
    at_vertex: list[list[Fraction]] = [[] for _ in range(g.n)]
    for (u, v), w in zip(g.edges, g.weights):
        at_vertex[u].append(w)
        at_vertex[v].append(w)
    for ws in at_vertex:
        s = sum(ws, Fraction(0))
        s2 = sum((w * w for w in ws), Fraction(0))
        adjacent += (s * s - s2) / 2
    closed = all_pairs - adjacent

    if g.is_unit_weighted():
        formula = Fraction(comb(g.m, 2) - sum(comb(d, 2) for d in g.degrees()))
        if formula != enumerated:
            raise RuntimeError("pair-count formula disagrees with enumeration")
    if closed != enumerated:
        raise RuntimeError("weighted pair closed form disagrees with enumeration")
    return enumerated


# ---------------------------------------------------------------------------
# twins
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwinPartition:
    """Maximal classes of vertices with identical open neighborhoods."""

    classes: tuple[tuple[int, ...], ...]

    def non_singletons(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c for c in self.classes if len(c) > 1)


def twin_classes(g: Graph) -> TwinPartition:
    adj = g.adjacency()
    groups: dict[frozenset[int], list[int]] = {}
    for v in range(g.n):
        groups.setdefault(frozenset(adj[v]), []).append(v)
    classes = sorted((tuple(sorted(vs)) for vs in groups.values()), key=lambda c: c[0])
    return TwinPartition(classes=tuple(classes))


# ---------------------------------------------------------------------------
# trees / caterpillars
# ---------------------------------------------------------------------------

def is_tree(g: Graph) -> bool:
    if g.m != g.n - 1:
        return False
    if g.n == 0:
        return False
    adj = g.adjacency()
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def is_caterpillar(g: Graph) -> bool:
    """True iff g is a tree whose non-leaf vertices form a path."""
    if not is_tree(g):
        raise NotATreeError("is_caterpillar requires a tree")
    if g.n <= 3:
        return True
    deg = g.degrees()
    spine = {v for v in range(g.n) if deg[v] >= 2}
    if not spine:
        return True
    # Induced subgraph on the spine of a tree is a subtree, so it is a path
    # exactly when every induced degree is at most 2.
    for v in spine:
        adj_in_spine = sum(1 for u, w in g.edges if (u == v and w in spine) or (w == v and u in spine))
        if adj_in_spine > 2:
            return False
    return True


# ---------------------------------------------------------------------------
# proper colorings
# ---------------------------------------------------------------------------

def proper_coloring(g: Graph, k: int, size_bound: int = 20) -> list[int] | None:
    """Lexicographically first proper coloring with colors 0..k-1, or None.

    Backtracking in vertex order, trying colors in increasing order, which
    yields the lexicographically smallest color vector when one exists.
    """
    if k not in (2, 3):
        raise GraphError("k must be 2 or 3")
    if g.n > size_bound:
        raise SizeBoundExceeded(f"n={g.n} exceeds coloring bound {size_bound}")
    adj = g.adjacency()
    colors = [-1] * g.n

    def extend(v: int) -> bool:
        if v == g.n:
            return True
        for c in range(k):
            if all(colors[u] != c for u in adj[v] if colors[u] != -1):
                colors[v] = c
                if extend(v + 1):
                    return True
                colors[v] = -1
        return False

    if extend(0):
        return colors
    return None


def bipartition(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Canonical bipartition (color-0 side, color-1 side) or None."""
    coloring = proper_coloring(g, 2, size_bound=max(20, g.n))
    if coloring is None:
        return None
    side0 = tuple(v for v in range(g.n) if coloring[v] == 0)
    side1 = tuple(v for v in range(g.n) if coloring[v] == 1)
    return side0, side1


# ---------------------------------------------------------------------------
# exact maximum cut
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CutResult:
    sides: tuple[int, ...]
    size: Fraction


def maxcut_exact(g: Graph, size_bound: int = 24) -> CutResult:
    """Optimal cut by brute force over 2^(n-1) assignments with vertex 0 fixed.

    Ties resolve to the lexicographically smallest side vector.
    """
    if g.n > size_bound:
        raise SizeBoundExceeded(f"n={g.n} exceeds maxcut bound {size_bound}")
    if g.n == 0:
        return CutResult(sides=(), size=Fraction(0))
    best_val: Fraction | None = None
    best_sides: tuple[int, ...] = (0,) * g.n
    rest = g.n - 1
    for mask in range(1 << rest):
        sides = [0] * g.n
        for i in range(1, g.n):
            sides[i] = (mask >> (rest - i)) & 1
        val = Fraction(0)
        for (u, v), w in zip(g.edges, g.weights):
            if sides[u] != sides[v]:
                val += w
        if best_val is None or val > best_val:
            best_val = val
            best_sides = tuple(sides)
    return CutResult(sides=best_sides, size=best_val if best_val is not None else Fraction(0))
