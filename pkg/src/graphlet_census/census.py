"""Graphlet frequencies and per-node orbit counts.

``gtrie_census`` walks the graphlet-trie over the network; ``esu_census``
is an independent oracle that enumerates connected vertex sets with ESU
and classifies each one by canonical form.
"""

from __future__ import annotations

import multiprocessing as mp
import os
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .graphlets import GraphletSet
from .gtrie import GTrie, GTrieNode
from .isomorphism import SmallGraph

INT64_MAX = np.iinfo(np.int64).max
# Above this many matrix cells the accumulators are sparse per node.
DENSE_LIMIT = 20_000_000


@dataclass
class OrbitFrequencyMatrix:
    """Per-node orbit counts (``counts[u, j]``) and per-graphlet frequencies."""

    counts: np.ndarray
    graphlet_freqs: np.ndarray
    graphlets: GraphletSet
    node_labels: tuple[str, ...]

    @property
    def node_count(self) -> int:
        return self.counts.shape[0]

    @property
    def orbit_count(self) -> int:
        return self.counts.shape[1]

    def gdv(self, u: int) -> np.ndarray:
        if not 0 <= u < self.node_count:
            raise IndexError(f"node {u} out of range")
        return self.counts[u]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrbitFrequencyMatrix):
            return NotImplemented
        return (np.array_equal(self.counts, other.counts)
                and np.array_equal(self.graphlet_freqs, other.graphlet_freqs))


def gdv(m: OrbitFrequencyMatrix, u: int) -> np.ndarray:
    return m.gdv(u)


def _check(g: Graph, gs: GraphletSet) -> None:
    if g.directed != gs.directed:
        raise ValueError(
            f"graph is {'directed' if g.directed else 'undirected'} but the "
            f"graphlets are {'directed' if gs.directed else 'undirected'}")


def _new_accumulator(n: int, m: int) -> list:
    if n * m <= DENSE_LIMIT:
        return [[0] * m for _ in range(n)]
    return [dict() for _ in range(n)]


def _finish(acc: list, freqs: list[int], g: Graph, gs: GraphletSet) -> OrbitFrequencyMatrix:
    n, m = g.node_count, gs.orbit_count
    counts = np.zeros((n, m), dtype=np.int64)
    for u, row in enumerate(acc):
        if isinstance(row, dict):
            items = row.items()
        else:
            items = ((j, c) for j, c in enumerate(row) if c)
        for j, c in items:
            if c > INT64_MAX:
                raise OverflowError(f"orbit count for node {u}, orbit {j} exceeds 64 bits")
            counts[u, j] = c
    if any(f > INT64_MAX for f in freqs):
        raise OverflowError("graphlet frequency exceeds 64 bits")
    return OrbitFrequencyMatrix(counts, np.array(freqs, dtype=np.int64), gs, g.node_labels)


def _merge(parts: list[tuple[list, list[int]]], n: int, m: int):
    acc, freqs = parts[0]
    for other_acc, other_freqs in parts[1:]:
        for i, f in enumerate(other_freqs):
            freqs[i] += f
        for u in range(n):
            row, other = acc[u], other_acc[u]
            if isinstance(row, dict):
                for j, c in other.items():
                    row[j] = row.get(j, 0) + c
            else:
                for j, c in enumerate(other):
                    if c:
                        row[j] += c
    return acc, freqs


# --------------------------------------------------------------------------
# g-trie census


def _gtrie_roots(g: Graph, trie: GTrie, roots) -> tuple[list, list[int]]:
    adj = g.adjacency
    nbrs = g.neighbors
    acc = _new_accumulator(g.node_count, trie.source_set.orbit_count)
    freqs = [0] * len(trie.source_set)
    matched: list[int] = []
    used: set[int] = set()

    def visit(node: GTrieNode) -> None:
        table = node.child_by_pattern
        cand = set()
        for u in matched:
            cand.update(nbrs[u])
        cand -= used
        zeros = (0,) * len(matched)
        bounds: dict = {}
        for v in cand:
            child = table.get(tuple(map(adj[v].get, matched, zeros)))
            if child is None:
                continue
            guards = child.guards
            if guards is not None:
                lb = bounds.get(child)
                if lb is None:
                    lb = _lower_bound(guards, matched)
                    bounds[child] = lb
                if v <= lb:
                    continue
            matched.append(v)
            if child.is_counting and (not child.check_own or all(
                    matched[a] < matched[b] for a, b in child.conditions)):
                freqs[child.graphlet_ref] += 1
                for w, o in zip(matched, child.orbit_ids):
                    acc[w][o] += 1
            if child.child_by_pattern:
                used.add(v)
                visit(child)
                used.discard(v)
            matched.pop()

    for top in trie.root.children:  # the single depth-0 node
        for v in roots:
            matched.append(v)
            used.add(v)
            if top.child_by_pattern:
                visit(top)
            used.discard(v)
            matched.pop()
    return acc, freqs


def _lower_bound(guards, matched) -> float:
    """Smallest index bound a candidate must exceed under any live guard."""
    best = float("inf")
    for prior, before in guards:
        if all(matched[a] < matched[b] for a, b in prior):
            lb = max((matched[a] for a in before), default=-1)
            if lb < best:
                best = lb
    return best


_WORKER_STATE: tuple | None = None


def _worker(args) -> tuple[list, list[int]]:
    kind, index, workers = args
    g, structure = _WORKER_STATE
    roots = range(index, g.node_count, workers)
    if kind == "gtrie":
        return _gtrie_roots(g, structure, roots)
    return _esu_roots(g, structure, roots)


def _run(kind: str, g: Graph, structure, gs: GraphletSet, workers: int | None):
    workers = max(1, min(workers or os.cpu_count() or 1, max(g.node_count, 1)))
    roots_fn = _gtrie_roots if kind == "gtrie" else _esu_roots
    if workers == 1:
        acc, freqs = roots_fn(g, structure, range(g.node_count))
        return _finish(acc, freqs, g, gs)
    global _WORKER_STATE
    _WORKER_STATE = (g, structure)
    try:
        ctx = mp.get_context("fork")
        with ctx.Pool(workers) as pool:
            parts = pool.map(_worker, [(kind, i, workers) for i in range(workers)])
    finally:
        _WORKER_STATE = None
    acc, freqs = _merge(parts, g.node_count, gs.orbit_count)
    return _finish(acc, freqs, g, gs)


def gtrie_census(g: Graph, trie: GTrie, workers: int | None = 1) -> OrbitFrequencyMatrix:
    """Count every induced graphlet occurrence and per-node orbit appearances.

    With ``workers > 1`` the root vertices are dealt round-robin to worker
    processes whose private counts are summed; the result does not depend
    on the worker count.
    """
    _check(g, trie.source_set)
    return _run("gtrie", g, trie, trie.source_set, workers)


# --------------------------------------------------------------------------
# ESU oracle


class _Classifier:
    """Caches graphlet and orbit lookups by the induced code tuple."""

    def __init__(self, gs: GraphletSet):
        self.gs = gs
        self.cache: dict[tuple, tuple[int, tuple[int, ...]]] = {}

    def classify(self, key: tuple, size: int) -> tuple[int, tuple[int, ...]]:
        hit = self.cache.get(key)
        if hit is None:
            m = [[0] * size for _ in range(size)]
            it = iter(key)
            for i in range(size):
                for j in range(i + 1, size):
                    c = next(it)
                    m[i][j] = c
                    m[j][i] = ((c & 2) >> 1) | ((c & 1) << 1)
            hit = self.gs.lookup(SmallGraph(tuple(map(tuple, m)), self.gs.directed))
            self.cache[key] = hit
        return hit


def _esu_roots(g: Graph, gs: GraphletSet, roots) -> tuple[list, list[int]]:
    k = gs.k
    adj = g.adjacency
    nbrs = g.neighbors
    acc = _new_accumulator(g.node_count, gs.orbit_count)
    freqs = [0] * len(gs)
    classify = _Classifier(gs).classify
    sub: list[int] = []

    def record() -> None:
        size = len(sub)
        key = tuple([adj[sub[i]].get(sub[j], 0)
                     for i in range(size) for j in range(i + 1, size)])
        gi, orbits = classify(key, size)
        freqs[gi] += 1
        for v, o in zip(sub, orbits):
            acc[v][o] += 1

    def extend(ext: list[int], root: int, closed: set[int]) -> None:
        # closed: the subgraph plus every vertex adjacent to it
        if len(sub) >= 2:
            record()
        if len(sub) == k:
            return
        ext = list(ext)
        while ext:
            w = ext.pop()
            new_ext = list(ext)
            added = []
            for u in nbrs[w]:
                if u > root and u not in closed:
                    new_ext.append(u)
                    added.append(u)
            sub.append(w)
            closed.update(added)
            extend(new_ext, root, closed)
            closed.difference_update(added)
            sub.pop()

    for v in roots:
        sub.append(v)
        closed = {v, *nbrs[v]}
        extend([u for u in nbrs[v] if u > v], v, closed)
        sub.pop()
    return acc, freqs


def esu_census(g: Graph, k: int, gs: GraphletSet, workers: int | None = 1) -> OrbitFrequencyMatrix:
    """Oracle census: ESU enumeration plus canonical-form classification."""
    _check(g, gs)
    if gs.k != k:
        raise ValueError(f"graphlet set was generated for k={gs.k}, not {k}")
    return _run("esu", g, gs, gs, workers)
