import itertools
import math
import random

import pytest

from conftest import graphlet_set
from graphlet_census.isomorphism import (
    SmallGraph,
    automorphisms,
    canonical_form,
    canonical_graph,
    is_isomorphic,
    vertex_orbits,
)


def brute_automorphisms(g):
    """Permutations a with g[a[u]][a[v]] == g[u][v] for all u, v."""
    n, m = g.size, g.matrix
    return sorted(
        a for a in itertools.permutations(range(n))
        if all(m[a[u]][a[v]] == m[u][v] for u in range(n) for v in range(n))
    )


def relabel(g, perm):
    """Move vertex v to position perm[v]."""
    inverse = [0] * g.size
    for v, p in enumerate(perm):
        inverse[p] = v
    return g.permuted(inverse)


PATH3 = SmallGraph.from_edges(3, [(0, 1), (1, 2)], False)
TRIANGLE = SmallGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)], False)
FFL = SmallGraph.from_edges(3, [(0, 1), (0, 2), (1, 2)], True)
CYCLE3 = SmallGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)], True)


def test_path_relabelings_share_a_key():
    other = SmallGraph.from_edges(3, [(1, 0), (0, 2)], False)
    assert canonical_form(PATH3).key == canonical_form(other).key


def test_path_and_triangle_differ():
    assert canonical_form(PATH3).key != canonical_form(TRIANGLE).key


def test_all_ffl_relabelings_one_key():
    keys = {canonical_form(FFL.permuted(p)).key for p in itertools.permutations(range(3))}
    assert len(keys) == 1


@pytest.mark.parametrize("g, count", [(TRIANGLE, 6), (CYCLE3, 3), (PATH3, 2), (FFL, 1)])
def test_automorphism_counts(g, count):
    auts = automorphisms(g)
    assert len(auts) == count
    assert sorted(auts) == brute_automorphisms(g)
    assert auts[0] == tuple(range(g.size))


def test_vertex_orbit_examples():
    assert vertex_orbits(TRIANGLE) == [(0, 1, 2)]
    assert vertex_orbits(PATH3) == [(0, 2), (1,)]
    assert vertex_orbits(FFL) == [(0,), (1,), (2,)]


def test_size_limit():
    big = SmallGraph.from_edges(6, [(i, i + 1) for i in range(5)], True)
    with pytest.raises(ValueError):
        canonical_form(big)
    with pytest.raises(ValueError):
        automorphisms(big)


def test_inconsistent_matrix_rejected():
    with pytest.raises(ValueError):
        SmallGraph(((0, 2), (2, 0)), True)


@pytest.mark.parametrize("n", range(2, 8))
def test_clique_has_factorial_automorphisms(n):
    clique = SmallGraph.from_edges(n, itertools.combinations(range(n), 2), False)
    assert len(automorphisms(clique)) == math.factorial(n)
    assert vertex_orbits(clique) == [tuple(range(n))]


@pytest.mark.parametrize("k, directed", [(4, False), (4, True)])
def test_key_equivalence_on_all_small_graphlets(k, directed):
    rng = random.Random(k * 7 + directed)
    gs = graphlet_set(k, directed)
    keys = set()
    for g, key in zip(gs.graphlets, gs.keys):
        assert canonical_form(g).key == key
        keys.add(key)
        auts = automorphisms(g)
        assert math.factorial(g.size) % len(auts) == 0
        orbits = vertex_orbits(g)
        for _ in range(5):
            perm = list(range(g.size))
            rng.shuffle(perm)
            h = relabel(g, perm)
            assert canonical_form(h).key == key
            assert is_isomorphic(g, h)
            assert canonical_graph(h) == canonical_graph(g)
            # orbits of the relabeled graph are images of the originals
            moved = sorted(tuple(sorted(perm[v] for v in c)) for c in orbits)
            assert sorted(vertex_orbits(h)) == moved
    assert len(keys) == len(gs)


def test_random_digraphs_match_brute_force():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(2, 5)
        edges = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < 0.45]
        g = SmallGraph.from_edges(n, edges, True)
        assert sorted(automorphisms(g)) == brute_automorphisms(g)
        order = canonical_form(g).order
        assert sorted(order) == list(range(n))
