import itertools
import random
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings

from alphaspectra.graph import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    path_graph,
    petersen_graph,
    star_graph,
)
from alphaspectra.invariants import (
    CliquePacking,
    CyclePacking,
    SizeGuardError,
    bipartition,
    chromatic_number,
    coloring,
    compute_bundle,
    find_clique_packing,
    find_even_cycle_packing,
    independence_number,
    integer_rank,
    is_k3_free_and_c4_free,
    matching_number,
    maximum_independent_set,
    maximum_matching,
    nullity,
    validate_packing,
    zagreb_index,
    zagreb_sandwich,
)
from alphaspectra.search import generate_trees
from alphaspectra.spectra import build_matrix
from alphaspectra.linalg import eigenvalues

from conftest import graphs, random_graph, to_nx


def brute_matching(g, free=None):
    """Exhaustive: the lowest free vertex is either left unmatched or matched to a free neighbour."""
    if free is None:
        free = frozenset(range(g.n))
    if not free:
        return 0
    v = min(free)
    rest = free - {v}
    best = brute_matching(g, rest)
    for w in g.neighbors(v) & rest:
        best = max(best, 1 + brute_matching(g, rest - {w}))
    return best


def brute_chromatic(g):
    for k in range(1, g.n + 1):
        for colors in itertools.product(range(k), repeat=g.n):
            if all(colors[u] != colors[v] for u, v in g.edges):
                return k
    return 0


def test_bundle_examples():
    b = compute_bundle(path_graph(4))
    assert (b.m, b.z1, b.beta, b.eta, b.theta, b.chi) == (3, 10, 2, 0, 2, 2)
    assert b.part_sizes == (2, 2)
    s = compute_bundle(star_graph(4))
    assert (s.beta, s.eta, s.theta, s.chi) == (1, 2, 3, 2)
    for n in range(2, 9):
        k = compute_bundle(complete_graph(n))
        assert (k.beta, k.theta, k.chi, k.z1) == (n // 2, 1, n, n * (n - 1) ** 2)


def test_matching_examples():
    assert matching_number(path_graph(4)) == 2
    assert matching_number(cycle_graph(5)) == 2
    assert matching_number(petersen_graph()) == 5
    assert matching_number(empty_graph(4)) == 0


def test_matching_is_valid():
    rng = random.Random(3)
    for _ in range(300):
        g = random_graph(rng, rng.randint(1, 14), rng.random())
        mt = maximum_matching(g)
        used = [v for e in mt for v in e]
        assert len(used) == len(set(used))
        assert all(g.has_edge(u, v) for u, v in mt)
        assert len(mt) == len(nx.max_weight_matching(to_nx(g), maxcardinality=True))


def test_nullity_examples():
    assert nullity(cycle_graph(4)) == 2
    for n in range(2, 9):
        assert nullity(complete_graph(n)) == 0
    for n in range(1, 11):
        for t in generate_trees(n):
            assert nullity(t) == n - 2 * matching_number(t)


def test_integer_rank():
    assert integer_rank([[1, 2], [2, 4]]) == 1
    assert integer_rank([[0, 0], [0, 0]]) == 0
    assert integer_rank([]) == 0


def test_independence_and_chromatic_examples():
    c5 = cycle_graph(5)
    assert independence_number(c5) == 2 and chromatic_number(c5) == 3
    for s, t in [(1, 3), (2, 5), (3, 3)]:
        g = complete_bipartite_graph(s, t)
        assert independence_number(g) == max(s, t) and chromatic_number(g) == 2
    p = petersen_graph()
    assert independence_number(p) == 4 and chromatic_number(p) == 3
    assert chromatic_number(empty_graph(3)) == 1
    assert chromatic_number(Graph(0)) == 0


def test_exact_searches_against_oracles():
    rng = random.Random(5)
    for _ in range(150):
        g = random_graph(rng, rng.randint(1, 8), rng.random())
        mis = maximum_independent_set(g)
        assert all(not g.has_edge(u, v) for u, v in itertools.combinations(mis, 2))
        comp = nx.complement(to_nx(g))
        assert len(mis) == max(len(c) for c in nx.find_cliques(comp))
        chi = chromatic_number(g)
        assert chi == brute_chromatic(g)
        cols = coloring(g, chi)
        assert all(cols[u] != cols[v] for u, v in g.edges)


def test_size_guard():
    with pytest.raises(SizeGuardError):
        independence_number(empty_graph(25))
    b = compute_bundle(cycle_graph(30))
    assert b.theta is None and b.chi is None


def test_bipartition():
    x, y = bipartition(cycle_graph(6))
    assert sorted(x + y) == list(range(6))
    assert bipartition(cycle_graph(5)) is None


def test_k3_c4_free():
    for t in generate_trees(8):
        assert is_k3_free_and_c4_free(t)
    assert not is_k3_free_and_c4_free(cycle_graph(4))
    assert not is_k3_free_and_c4_free(complete_graph(3))
    assert is_k3_free_and_c4_free(petersen_graph())


def test_packing_examples():
    assert validate_packing(cycle_graph(6), CyclePacking(((0, 1, 2, 3, 4, 5),))) == (True, None)
    ok, reason = validate_packing(complete_graph(4), CyclePacking(((0, 1, 2, 3),)))
    assert not ok and reason == "not-induced"
    two_triangles = Graph(6, disjoint_union(complete_graph(3), complete_graph(3)).edges + ((2, 3),))
    packing = find_clique_packing(two_triangles)
    assert sum(1 for c in packing.cliques if len(c) >= 3) >= 2


@pytest.mark.parametrize("packing,reason", [
    (CliquePacking(((0, 1), (1, 2))), "overlap"),
    (CliquePacking(((0,),)), "too-small"),
    (CliquePacking(((0, 9),)), "out-of-range"),
    (CliquePacking(((0, 2),)), "not-induced"),
    (CyclePacking(((0, 1, 2),)), "too-small"),
])
def test_packing_rejections(packing, reason):
    assert validate_packing(path_graph(4), packing) == (False, reason)


def test_cycle_packing_rejections():
    c5 = cycle_graph(5)
    assert validate_packing(c5, CyclePacking(((0, 1, 2, 3, 4),))) == (False, "odd-length")
    g = disjoint_union(cycle_graph(4), cycle_graph(6))
    ok = CyclePacking(((4, 5, 6, 7, 8, 9), (0, 1, 2, 3)))
    assert validate_packing(g, ok) == (True, None)
    assert validate_packing(g, CyclePacking(ok.cycles[::-1])) == (False, "unsorted")


@given(graphs(max_n=10))
@settings(max_examples=150)
def test_packings_always_validate(g):
    assert validate_packing(g, find_clique_packing(g))[0]
    assert validate_packing(g, find_even_cycle_packing(g))[0]


@given(graphs(min_n=1, max_n=12))
def test_zagreb_sandwich_exact(g):
    lo, hi = zagreb_sandwich(g)
    z = Fraction(zagreb_index(g))
    assert lo <= z <= hi


@given(graphs(max_n=9))
@settings(max_examples=150)
def test_matching_brute_force(g):
    assert matching_number(g) == brute_matching(g)


@given(graphs(min_n=2, max_n=10))
@settings(max_examples=150)
def test_bipartite_rank_counts_pairs(g):
    if bipartition(g) is None:
        return
    spec = eigenvalues(build_matrix(g, "adjacency"))
    positive = sum(1 for x in spec if x > 1e-8)
    assert g.n - nullity(g) == 2 * positive
    assert nullity(g) == g.n - np.linalg.matrix_rank(g.adjacency_matrix())
