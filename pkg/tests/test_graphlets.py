import io

import pytest

from conftest import graphlet_set
from graphlet_census.graphlets import GraphletFormatError, dump, generate, load
from graphlet_census.isomorphism import canonical_form

# Graphlet and orbit totals of sizes 2..k.
UNDIRECTED = {2: (1, 1), 3: (3, 4), 4: (9, 15), 5: (30, 73), 6: (142, 480)}
DIRECTED = {2: (2, 3), 3: (15, 33), 4: (214, 730)}


@pytest.mark.parametrize("k, expected", UNDIRECTED.items())
def test_undirected_counts(k, expected):
    gs = graphlet_set(k, False)
    assert (len(gs), gs.orbit_count) == expected


@pytest.mark.parametrize("k, expected", DIRECTED.items())
def test_directed_counts(k, expected):
    gs = graphlet_set(k, True)
    assert (len(gs), gs.orbit_count) == expected


@pytest.mark.parametrize("k, directed", [(5, False), (4, True)])
def test_graphlets_connected_canonical_sorted(k, directed):
    gs = graphlet_set(k, directed)
    order = [(g.size, key) for g, key in zip(gs.graphlets, gs.keys)]
    assert order == sorted(order)
    assert len(set(gs.keys)) == len(gs)
    for g, key in zip(gs.graphlets, gs.keys):
        assert g.is_connected()
        assert canonical_form(g).key == key
        assert canonical_form(g).order == tuple(range(g.size))


def test_orbit_ids_dense_and_ordered():
    gs = graphlet_set(4, True)
    flat = []
    for classes, ids in zip(gs.orbit_classes, gs.orbit_ids):
        flat.extend(ids[c[0]] for c in classes)
    assert flat == list(range(gs.orbit_count))


def test_generation_is_deterministic():
    a, b = generate(4, True), generate(4, True)
    assert a.keys == b.keys and a.orbit_ids == b.orbit_ids


def test_orbit_of_examples():
    u2 = graphlet_set(2, False)
    assert u2.orbit_of(0, 0) == u2.orbit_of(0, 1) == 0
    d2 = graphlet_set(2, True)
    single = next(i for i, g in enumerate(d2.graphlets) if len(g.edges()) == 1)
    both = 1 - single
    assert {d2.orbit_of(single, 0), d2.orbit_of(single, 1), d2.orbit_of(both, 0)} == {0, 1, 2}
    assert d2.orbit_of(both, 0) == d2.orbit_of(both, 1)
    u3 = graphlet_set(3, False)
    path = next(i for i, g in enumerate(u3.graphlets) if g.size == 3 and len(g.edges()) == 2)
    ends = [p for p in range(3) if sum(1 for c in u3.graphlets[path].matrix[p] if c) == 1]
    middle = next(p for p in range(3) if p not in ends)
    assert u3.orbit_of(path, ends[0]) == u3.orbit_of(path, ends[1])
    assert u3.orbit_of(path, middle) != u3.orbit_of(path, ends[0])


def test_orbit_of_invalid_index():
    with pytest.raises(IndexError):
        graphlet_set(3, False).orbit_of(10, 0)


@pytest.mark.parametrize("k, directed", [(1, False), (9, False), (6, True)])
def test_k_out_of_range(k, directed):
    with pytest.raises(ValueError):
        generate(k, directed)


def test_mean_orbits_per_graphlet_directed():
    # Published multipliers are coarse (33/15 = 2.2 is listed as 2.3).
    for k, ratio in [(2, 1.5), (3, 2.3), (4, 3.5)]:
        gs = graphlet_set(k, True)
        assert abs(gs.orbit_count / len(gs) - ratio) <= 0.1 + 1e-9


@pytest.mark.parametrize("k, directed", [(5, False), (4, True)])
def test_serialization_round_trip(k, directed):
    gs = graphlet_set(k, directed)
    buf = io.StringIO()
    dump(gs, buf)
    text = buf.getvalue()
    again = load(io.StringIO(text))
    assert again.keys == gs.keys
    assert again.orbit_ids == gs.orbit_ids
    assert again.orbit_classes == gs.orbit_classes
    buf2 = io.StringIO()
    dump(again, buf2)
    assert buf2.getvalue() == text


def test_truncated_graphlet_file():
    buf = io.StringIO()
    dump(graphlet_set(4, False), buf)
    lines = buf.getvalue().splitlines(keepends=True)
    with pytest.raises(GraphletFormatError):
        load(io.StringIO("".join(lines[:-2])))
