import random

import networkx as nx
import pytest

from localmatch import build_graph

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def from_nx(G, d=None):
    G = nx.convert_node_labels_to_integers(G, ordering="sorted")
    deg = max((x for _, x in G.degree()), default=0)
    return build_graph(G.number_of_nodes(), G.edges(), deg if d is None else d)


def random_small_graph(rnd: random.Random, n_max=12, d_max=5):
    """Random simple graph with degree cap; edges added in random order."""
    n = rnd.randint(1, n_max)
    d = rnd.randint(1, d_max)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rnd.shuffle(pairs)
    keep = rnd.random()
    deg = [0] * n
    edges = []
    for u, v in pairs:
        if rnd.random() < keep and deg[u] < d and deg[v] < d:
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return build_graph(n, edges, d)


@pytest.fixture
def rnd():
    return random.Random(12345)
