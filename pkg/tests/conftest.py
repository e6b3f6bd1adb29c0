import random

import pytest

from koptlab import Graph


def random_simple_graph(rng: random.Random, n_max: int = 9, p: float | None = None) -> Graph:
    n = rng.randint(1, n_max)
    q = rng.random() if p is None else p
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < q]
    return Graph(n, edges)


def random_triangle_free(rng: random.Random, n: int, p: float = 0.55) -> Graph:
    """Greedy triangle-free sample: shuffled pairs, kept if no common neighbor."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    adj = [0] * n
    edges = []
    for u, v in pairs:
        if rng.random() < p and not (adj[u] & adj[v]):
            edges.append((u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return Graph(n, edges)


def assert_proper_coloring(subgraph) -> None:
    seen = set()
    for (u, v), c in subgraph.colored.items():
        assert 1 <= c <= subgraph.k
        assert (u, c) not in seen and (v, c) not in seen
        seen.add((u, c))
        seen.add((v, c))


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
