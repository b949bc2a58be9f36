"""Seeded random network generators used for testing and benchmarking."""

from __future__ import annotations

import random

from .graph import Graph, from_edges

MODELS = ("er", "reciprocal", "dag")


def erdos_renyi(n: int, density: float, directed: bool, seed: int | None = None) -> Graph:
    """Each ordered (directed) or unordered pair is an edge with probability ``density``."""
    rng = random.Random(seed)
    edges = []
    for u in range(n):
        for v in range(n if directed else u):
            if u != v and rng.random() < density:
                edges.append((u, v))
    return from_edges(edges, n, directed)


def random_edges(n: int, m: int, directed: bool, seed: int | None = None) -> Graph:
    """Uniform random graph with exactly ``m`` distinct edges."""
    limit = n * (n - 1) if directed else n * (n - 1) // 2
    if m > limit:
        raise ValueError(f"at most {limit} edges fit on {n} nodes")
    rng = random.Random(seed)
    edges: set[tuple[int, int]] = set()
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        if not directed and u > v:
            u, v = v, u
        edges.add((u, v))
    return from_edges(sorted(edges), n, directed)


def reciprocal_digraph(n: int, m: int, reciprocal_fraction: float = 0.8,
                       seed: int | None = None) -> Graph:
    """Random digraph with about ``m`` ordered edges, most of them reciprocated."""
    rng = random.Random(seed)
    pairs: set[tuple[int, int]] = set()
    edges: set[tuple[int, int]] = set()
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v or (min(u, v), max(u, v)) in pairs:
            continue
        pairs.add((min(u, v), max(u, v)))
        edges.add((u, v))
        if rng.random() < reciprocal_fraction:
            edges.add((v, u))
    return from_edges(sorted(edges), n, True)


def hierarchical_dag(n: int, m: int, seed: int | None = None) -> Graph:
    """Acyclic digraph whose edges point from lower to higher levels.

    Nodes are split into a few levels; every edge joins a node to one in a
    later level, giving a feed-forward hierarchy without reciprocal edges.
    """
    rng = random.Random(seed)
    levels = max(3, round(n ** 0.5 / 2))
    level = sorted(rng.randrange(levels) for _ in range(n))
    edges: set[tuple[int, int]] = set()
    attempts = 0
    while len(edges) < m and attempts < 100 * m:
        attempts += 1
        u, v = rng.randrange(n), rng.randrange(n)
        if level[u] < level[v]:
            edges.add((u, v))
    return from_edges(sorted(edges), n, True)


def model_graph(model: str, n: int, m: int, seed: int | None = None) -> Graph:
    if model == "er":
        return random_edges(n, m, True, seed)
    if model == "reciprocal":
        return reciprocal_digraph(n, m, seed=seed)
    if model == "dag":
        return hierarchical_dag(n, m, seed)
    raise ValueError(f"unknown model {model!r}; choose from {', '.join(MODELS)}")
