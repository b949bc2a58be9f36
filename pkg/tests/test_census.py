import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_force_census, graphlet_set, random_graph, trie
from graphlet_census.census import esu_census, gdv, gtrie_census
from graphlet_census.graph import from_edges
from graphlet_census.isomorphism import SmallGraph


def graphlet_by_edges(gs, size, edges, directed):
    """Graphlet index and per-vertex orbits for a small edge set."""
    return gs.lookup(SmallGraph.from_edges(size, edges, directed))


def column_sums_consistent(result):
    gs = result.graphlets
    sums = result.counts.sum(axis=0)
    for gi, (g, classes) in enumerate(zip(gs.graphlets, gs.orbit_classes)):
        f = result.graphlet_freqs[gi]
        for c in classes:
            if sums[gs.orbit_ids[gi][c[0]]] != f * len(c):
                return False
    return True


def test_triangle_k3():
    gs = graphlet_set(3, False)
    g = from_edges([(0, 1), (1, 2), (0, 2)], 3, False)
    r = gtrie_census(g, trie(3, False))
    tri, (t_orbit, _, _) = graphlet_by_edges(gs, 3, [(0, 1), (1, 2), (0, 2)], False)
    path, (p_end, p_mid, _) = graphlet_by_edges(gs, 3, [(0, 1), (1, 2)], False)
    assert r.graphlet_freqs[tri] == 1 and r.graphlet_freqs[path] == 0
    for u in range(3):
        assert r.counts[u, 0] == 2
        assert r.counts[u, t_orbit] == 1
        assert r.counts[u, p_end] == r.counts[u, p_mid] == 0


def test_star_k3():
    gs = graphlet_set(3, False)
    g = from_edges([(0, 1), (0, 2), (0, 3)], 4, False)
    r = gtrie_census(g, trie(3, False))
    path, (p_end, p_mid, _) = graphlet_by_edges(gs, 3, [(0, 1), (1, 2)], False)
    # C(3, 2) leaf pairs each give one path centred on node 0
    assert r.graphlet_freqs[path] == 3
    assert r.counts[0, 0] == 3 and r.counts[0, p_mid] == 3
    for leaf in (1, 2, 3):
        assert r.counts[leaf, 0] == 1 and r.counts[leaf, p_end] == 2
    assert r == esu_census(g, 3, gs)


def test_feed_forward_loop_k3():
    gs = graphlet_set(3, True)
    g = from_edges([(0, 1), (0, 2), (1, 2)], 3, True)
    r = gtrie_census(g, trie(3, True))
    ffl, orbits = graphlet_by_edges(gs, 3, [(0, 1), (0, 2), (1, 2)], True)
    size3 = gs.graphlets_of_size(3)
    assert [int(r.graphlet_freqs[i]) for i in size3].count(1) == 1
    assert r.graphlet_freqs[ffl] == 1
    assert len(set(orbits)) == 3
    for u, o in enumerate(orbits):
        assert r.counts[u, o] == 1


def test_five_cycle_k3():
    gs = graphlet_set(3, False)
    g = from_edges([(i, (i + 1) % 5) for i in range(5)], 5, False)
    r = esu_census(g, 3, gs)
    path, _ = graphlet_by_edges(gs, 3, [(0, 1), (1, 2)], False)
    tri, _ = graphlet_by_edges(gs, 3, [(0, 1), (1, 2), (0, 2)], False)
    assert r.graphlet_freqs[path] == 5 and r.graphlet_freqs[tri] == 0
    assert r == gtrie_census(g, trie(3, False))


def test_single_directed_edge_k2():
    gs = graphlet_set(2, True)
    g = from_edges([(0, 1)], 2, True)
    r = esu_census(g, 2, gs)
    _, (src, dst) = graphlet_by_edges(gs, 2, [(0, 1)], True)
    assert src != dst
    assert r.counts[0, src] == 1 and r.counts[1, dst] == 1
    assert r.counts.sum() == 2
    assert r == gtrie_census(g, trie(2, True))


def test_gdv_examples():
    g = from_edges([(0, 1), (1, 2)], 4, False)  # node 3 isolated
    r = gtrie_census(g, trie(3, False))
    assert gdv(r, 1)[0] == 2
    assert not gdv(r, 3).any()
    with pytest.raises(IndexError):
        gdv(r, 4)


def test_directedness_mismatch():
    g = from_edges([(0, 1)], 2, True)
    with pytest.raises(ValueError):
        gtrie_census(g, trie(3, False))
    with pytest.raises(ValueError):
        esu_census(g, 3, graphlet_set(3, False))


@pytest.mark.parametrize("k, directed", [(3, False), (4, False), (5, False), (3, True), (4, True)])
def test_matches_brute_force_on_small_graphs(k, directed):
    rng = random.Random(k * 31 + directed)
    gs = graphlet_set(k, directed)
    for _ in range(4):
        g = random_graph(rng, rng.randint(5, 7), rng.uniform(0.2, 0.5), directed)
        counts, freqs = brute_force_census(g, gs)
        r = gtrie_census(g, trie(k, directed))
        assert np.array_equal(r.counts, counts)
        assert np.array_equal(r.graphlet_freqs, freqs)


@pytest.mark.parametrize("directed", [False, True])
def test_oracle_equivalence_and_invariants(directed):
    rng = random.Random(99 + directed)
    for k in (3, 4):
        for _ in range(6):
            g = random_graph(rng, rng.randint(5, 30), rng.uniform(0.05, 0.3), directed)
            r = gtrie_census(g, trie(k, directed))
            assert r == esu_census(g, k, graphlet_set(k, directed))
            assert column_sums_consistent(r)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_clique_found_once(n):
    pairs = list(itertools.combinations(range(n), 2))
    g = from_edges(pairs, n, False)
    clique, _ = graphlet_by_edges(graphlet_set(n, False), n, pairs, False)
    r = gtrie_census(g, trie(n, False))
    assert r.graphlet_freqs[clique] == 1


def test_parallel_matches_sequential():
    rng = random.Random(3)
    g = random_graph(rng, 40, 0.1, True)
    seq = gtrie_census(g, trie(4, True), workers=1)
    for w in (2, 3):
        assert gtrie_census(g, trie(4, True), workers=w) == seq
        assert esu_census(g, 4, graphlet_set(4, True), workers=w) == seq


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_relabeling_permutes_rows(seed, directed):
    rng = random.Random(seed)
    g = random_graph(rng, 9, 0.3, directed)
    perm = list(range(9))
    rng.shuffle(perm)
    edges = [(perm[u], perm[v]) for u, v in g.edges()]
    if not directed:
        edges += [(v, u) for u, v in edges]
    h = from_edges(edges, 9, directed)
    rg = gtrie_census(g, trie(3, directed))
    rh = gtrie_census(h, trie(3, directed))
    assert np.array_equal(rg.graphlet_freqs, rh.graphlet_freqs)
    for u in range(9):
        assert np.array_equal(rg.counts[u], rh.counts[perm[u]])
    assert sorted(map(tuple, rg.counts)) == sorted(map(tuple, rh.counts))
