import random

import pytest

from crossmax.graphs import Graph


def spider_tree() -> Graph:
    """Smallest non-caterpillar tree: three legs of length 2 from a center.

    Vertex 0 is the center; legs are 0-1-2, 0-3-4, 0-5-6.
    """
    return Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_three_regular(n: int, rng: random.Random) -> Graph:
    """Random simple 3-regular graph on n vertices via rejection sampling."""
    assert n % 2 == 0 and n >= 4
    while True:
        stubs = [v for v in range(n) for _ in range(3)]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v or (min(u, v), max(u, v)) in edges:
                ok = False
                break
            edges.add((min(u, v), max(u, v)))
        if ok:
            return Graph.from_edges(n, sorted(edges))


@pytest.fixture
def spider() -> Graph:
    return spider_tree()
