import random
from fractions import Fraction

import pytest

from crossmax.graphs import (
    Graph,
    GraphParseError,
    NotATreeError,
    SizeBoundExceeded,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    independent_pair_weight,
    is_caterpillar,
    maxcut_exact,
    parse_graph,
    path_graph,
    proper_coloring,
    star_graph,
    twin_classes,
    write_graph,
)
from conftest import random_graph, random_three_regular, spider_tree


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def test_parse_single_edge():
    g = parse_graph("2 1\n0 1")
    assert g.n == 2
    assert g.edges == ((0, 1),)
    assert g.weights == (Fraction(1),)


def test_parse_k4():
    g = parse_graph("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3")
    assert g.n == 4 and g.m == 6
    assert g.edges == tuple((u, v) for u in range(4) for v in range(u + 1, 4))


def test_parse_self_loop_names_line():
    with pytest.raises(GraphParseError, match="self-loop at line 2") as ei:
        parse_graph("2 1\n0 0")
    assert ei.value.kind == "self-loop" and ei.value.line == 2


def test_parse_duplicate_edge():
    with pytest.raises(GraphParseError, match="line 3") as ei:
        parse_graph("3 2\n0 1\n1 0")
    assert ei.value.kind == "duplicate-edge"


def test_parse_vertex_out_of_range():
    with pytest.raises(GraphParseError) as ei:
        parse_graph("2 1\n0 2")
    assert ei.value.kind == "bad-vertex" and ei.value.line == 2


def test_parse_non_positive_weight():
    with pytest.raises(GraphParseError) as ei:
        parse_graph("2 1\n0 1 0/3")
    assert ei.value.kind == "bad-weight"


def test_parse_weights_and_comments():
    g = parse_graph("# weighted triangle\n3 3\n0 1 1/2\n# middle comment\n1 2 3\n0 2")
    assert g.weight_of(0, 1) == Fraction(1, 2)
    assert g.weight_of(1, 2) == 3
    assert g.weight_of(0, 2) == 1


def test_parse_edge_count_mismatch():
    with pytest.raises(GraphParseError) as ei:
        parse_graph("3 3\n0 1\n1 2")
    assert ei.value.kind == "format"


def test_write_round_trip():
    g = Graph.from_edges(4, [(2, 3), (0, 1), (1, 3)], [Fraction(1), Fraction(5, 2), Fraction(1)])
    text = write_graph(g)
    assert text.splitlines()[0] == "4 3"
    again = parse_graph(text)
    assert again == g


# ---------------------------------------------------------------------------
# independent pair weight
# ---------------------------------------------------------------------------

def test_pair_weight_c4():
    assert independent_pair_weight(cycle_graph(4)) == 2


def test_pair_weight_spider():
    assert independent_pair_weight(spider_tree()) == 9


def test_pair_weight_k4():
    # oracle: enumerate all disjoint edge pairs of K4 directly
    g = complete_graph(4)
    count = 0
    for i in range(g.m):
        for j in range(i + 1, g.m):
            if not set(g.edges[i]) & set(g.edges[j]):
                count += 1
    assert count == 3
    assert independent_pair_weight(g) == 3


def test_pair_weight_formula_vs_enumeration_random():
    # the function itself asserts formula == enumeration; exercise it broadly
    rng = random.Random(421)
    for _ in range(1000):
        n = rng.randint(1, 8)
        g = random_graph(n, rng.random(), rng)
        independent_pair_weight(g)


def test_pair_weight_weighted():
    g = Graph.from_edges(4, [(0, 1), (2, 3), (1, 2)], [Fraction(1, 2), Fraction(3), Fraction(7)])
    # only independent pair is (0,1)x(2,3)
    assert independent_pair_weight(g) == Fraction(3, 2)


# ---------------------------------------------------------------------------
# twins
# ---------------------------------------------------------------------------

def test_twins_star():
    part = twin_classes(star_graph(3))
    assert part.non_singletons() == ((1, 2, 3),)


def test_twins_k4_all_singletons():
    part = twin_classes(complete_graph(4))
    assert part.classes == ((0,), (1,), (2,), (3,))
    assert part.non_singletons() == ()


def test_twins_equivalence_properties():
    rng = random.Random(7)
    for _ in range(50):
        g = random_graph(rng.randint(2, 8), rng.random(), rng)
        part = twin_classes(g)
        adj = g.adjacency()
        covered = sorted(v for c in part.classes for v in c)
        assert covered == list(range(g.n))
        for cls in part.classes:
            for u in cls:
                for v in cls:
                    assert adj[u] == adj[v]
                    if u != v:
                        assert v not in adj[u]  # twin classes are independent


# ---------------------------------------------------------------------------
# caterpillar
# ---------------------------------------------------------------------------

def test_caterpillar_path():
    assert is_caterpillar(path_graph(5)) is True


def test_caterpillar_star():
    assert is_caterpillar(star_graph(4)) is True


def test_caterpillar_spider_false():
    assert is_caterpillar(spider_tree()) is False


def test_caterpillar_requires_tree():
    with pytest.raises(NotATreeError):
        is_caterpillar(cycle_graph(4))


# ---------------------------------------------------------------------------
# coloring
# ---------------------------------------------------------------------------

def test_coloring_even_cycle():
    c = proper_coloring(cycle_graph(6), 2)
    assert c == [0, 1, 0, 1, 0, 1]


def test_coloring_odd_cycle():
    assert proper_coloring(cycle_graph(5), 2) is None
    c = proper_coloring(cycle_graph(5), 3)
    assert c is not None
    g = cycle_graph(5)
    for u, v in g.edges:
        assert c[u] != c[v]


def test_coloring_k4_not_3colorable():
    assert proper_coloring(complete_graph(4), 3) is None


def test_coloring_size_bound():
    with pytest.raises(SizeBoundExceeded):
        proper_coloring(path_graph(25), 2)


# ---------------------------------------------------------------------------
# maxcut
# ---------------------------------------------------------------------------

def test_maxcut_k4():
    assert maxcut_exact(complete_graph(4)).size == 4


def test_maxcut_k33():
    res = maxcut_exact(complete_bipartite(3, 3))
    assert res.size == 9
    # the bipartition itself is the lexicographically smallest optimum
    assert res.sides == (0, 0, 0, 1, 1, 1)


def prism_graph() -> Graph:
    return Graph.from_edges(
        6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    )


def test_maxcut_prism():
    # brute-force oracle over all 32 cuts, written independently
    g = prism_graph()
    best = 0
    for mask in range(32):
        sides = [0] + [(mask >> i) & 1 for i in range(5)]
        best = max(best, sum(1 for u, v in g.edges if sides[u] != sides[v]))
    assert best == 7
    assert maxcut_exact(g).size == 7


def test_maxcut_three_regular_lower_bound():
    # cubic graphs always have a cut of at least 2/3 of the edges
    rng = random.Random(99)
    graphs = [complete_graph(4), complete_bipartite(3, 3), prism_graph()]
    graphs += [random_three_regular(8, rng) for _ in range(5)]
    for g in graphs:
        assert maxcut_exact(g).size >= Fraction(2 * g.m, 3)


def test_maxcut_deterministic_tiebreak():
    g = Graph.from_edges(2, [(0, 1)])
    assert maxcut_exact(g).sides == (0, 1)
