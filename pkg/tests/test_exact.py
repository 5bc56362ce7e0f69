import random
from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest

from localmatch import (
    Matching,
    brute_force_matching,
    build_graph,
    generate,
    matching_ratio,
    maximum_matching,
)
from localmatch.errors import GraphError, TooLarge
from localmatch.local_matcher import find_augmenting_path

from conftest import from_nx, random_small_graph


def enumerate_max_matching_size(g):
    """Largest k such that some k-subset of edges is pairwise disjoint."""
    edges = list(g.edges())
    best = 0
    for k in range(1, g.n // 2 + 1):
        if any(len({x for e in c for x in e}) == 2 * k for c in combinations(edges, k)):
            best = k
        else:
            break
    return best


def test_c5():
    assert len(maximum_matching(generate("cycle:n=5"))) == 2


def test_p4():
    assert len(maximum_matching(generate("path:n=4"))) == 2


def test_petersen_matches_enumeration():
    g = from_nx(nx.petersen_graph())
    expected = enumerate_max_matching_size(g)
    assert expected == 5
    assert len(maximum_matching(g)) == expected
    assert len(brute_force_matching(g)) == expected


def test_brute_force_k4_and_empty():
    assert len(brute_force_matching(from_nx(nx.complete_graph(4)))) == 2
    assert len(brute_force_matching(build_graph(5, [], 0))) == 0


def test_brute_force_cap():
    with pytest.raises(TooLarge):
        brute_force_matching(generate("path:n=21"))


def test_random_n12_cross_validation():
    g = generate("random_bounded:n=12,d=3,seed=5")
    assert len(maximum_matching(g)) == len(brute_force_matching(g))


def test_brute_force_agrees_with_enumeration():
    rnd = random.Random(3)
    for _ in range(40):
        g = random_small_graph(rnd, n_max=9)
        assert len(brute_force_matching(g)) == enumerate_max_matching_size(g)


def test_blossom_matches_networkx_on_larger_graphs():
    for seed in range(20):
        g = generate(f"random_bounded:n=300,d=4,seed={seed}")
        G = nx.Graph(list(g.edges()))
        expected = len(nx.max_weight_matching(G, maxcardinality=True))
        m = maximum_matching(g)
        m.validate(g)
        assert len(m) == expected


def test_blossom_needs_contraction():
    # two triangles joined by a path: greedy-by-degree alone can go wrong
    g = build_graph(8, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 5)], 3)
    assert len(maximum_matching(g, initial=Matching.from_pairs(8, [(0, 1), (3, 4), (6, 7)]))) == 4


def test_maximum_has_no_augmenting_path():
    rnd = random.Random(9)
    for _ in range(60):
        g = random_small_graph(rnd, n_max=14)
        m = maximum_matching(g)
        T = g.n // 2
        assert all(find_augmenting_path(g, m, v, T) is None for v in range(g.n))


def test_initial_matching_is_only_a_warm_start():
    g = generate("random_regular:n=500,d=3,seed=2")
    greedy = Matching.from_pairs(g.n, [(0, g.adj[0][0])])
    assert len(maximum_matching(g, initial=greedy)) == len(maximum_matching(g))


def test_matching_ratio_examples():
    c6 = generate("cycle:n=6")
    assert matching_ratio(c6, Matching.from_pairs(6, [(0, 1), (2, 3), (4, 5)])) == Fraction(1, 2)
    p3 = generate("path:n=3")
    assert matching_ratio(p3, maximum_matching(p3)) == Fraction(1, 3)
    one = build_graph(1, [], 0)
    assert matching_ratio(one, Matching.empty(1)) == 0


def test_ratio_bounds():
    rnd = random.Random(21)
    for _ in range(50):
        g = random_small_graph(rnd)
        assert 0 <= matching_ratio(g, maximum_matching(g)) <= Fraction(1, 2)


def test_matching_accessors_and_validation():
    m = Matching.from_pairs(4, [(0, 1)])
    assert m.partner(0) == 1 and m.partner(2) is None
    assert m.matched_vertices() == {0, 1}
    assert list(m.pairs()) == [(0, 1)]
    with pytest.raises(GraphError):
        Matching.from_pairs(4, [(0, 2)]).validate(generate("path:n=4"))
    with pytest.raises(ValueError):
        Matching.from_pairs(4, [(0, 1), (1, 2)])
