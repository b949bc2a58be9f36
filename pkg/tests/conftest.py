import itertools
import random
from functools import lru_cache

import numpy as np
import pytest

from graphlet_census.graph import Graph, from_edges
from graphlet_census.graphlets import GraphletSet, generate
from graphlet_census.gtrie import GTrie, build
from graphlet_census.isomorphism import SmallGraph


@lru_cache(maxsize=None)
def graphlet_set(k: int, directed: bool) -> GraphletSet:
    return generate(k, directed)


@lru_cache(maxsize=None)
def trie(k: int, directed: bool) -> GTrie:
    return build(graphlet_set(k, directed))


def random_graph(rng: random.Random, n: int, density: float, directed: bool) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(n)
             if u != v and (directed or u < v) and rng.random() < density]
    return from_edges(edges, n, directed)


def brute_force_census(g: Graph, gs: GraphletSet):
    """Naive census: every vertex subset, matched against each graphlet by
    trying all vertex permutations. Shares no code with the census module."""
    counts = np.zeros((g.node_count, gs.orbit_count), dtype=np.int64)
    freqs = np.zeros(len(gs), dtype=np.int64)
    by_size = {}
    for gi, h in enumerate(gs.graphlets):
        by_size.setdefault(h.size, []).append(gi)
    for size in range(2, gs.k + 1):
        for subset in itertools.combinations(range(g.node_count), size):
            sub = SmallGraph(tuple(tuple(g.adjacency[u].get(v, 0) for v in subset)
                                   for u in subset), g.directed)
            hit = None
            for gi in by_size[size]:
                h = gs.graphlets[gi].matrix
                for perm in itertools.permutations(range(size)):
                    # perm[p] is the subset slot placed at graphlet position p
                    if all(sub.matrix[perm[p]][perm[q]] == h[p][q]
                           for p in range(size) for q in range(size)):
                        hit = (gi, perm)
                        break
                if hit:
                    break
            if hit is None:
                continue  # disconnected subset
            gi, perm = hit
            freqs[gi] += 1
            for p, slot in enumerate(perm):
                counts[subset[slot], gs.orbit_ids[gi][p]] += 1
    return counts, freqs


@pytest.fixture
def rng():
    return random.Random(20240613)


_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance" in report.nodeid and (report.when == "call" or report.outcome != "passed"):
        _acceptance.setdefault(report.nodeid.split("::")[-1], report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, outcome in _acceptance.items():
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict} {name}")
