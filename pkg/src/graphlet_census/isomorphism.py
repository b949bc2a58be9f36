"""Canonical forms, automorphisms and vertex orbits of small graphs.

A vertex ordering is encoded position by position: position ``p``
contributes its connection codes to positions ``0..p-1`` followed by a
degree signature of the vertex. The canonical ordering is the one with the
lexicographically largest encoding. Because a vertex with any connection to
the prefix always beats one without, every prefix of a canonical ordering
induces a (weakly) connected graph, which is what the g-trie insertion
relies on.

The search only branches on ties, and every ordering that attains the
maximum is recorded. Those orderings form a coset of the automorphism
group, so automorphisms come out of the same search.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .graph import IN_BIT, OUT_BIT, reverse_code

# Largest supported graphlet size, keyed by directedness.
K_MAX = {False: 8, True: 5}


def k_max(directed: bool) -> int:
    return K_MAX[directed]


@dataclass(frozen=True)
class SmallGraph:
    """Adjacency matrix of a graph with at most ``K_MAX`` nodes.

    ``matrix[i][j]`` is the connection code of ``(i, j)`` as in
    :mod:`graphlet_census.graph`; undirected edges use code 3.
    """

    matrix: tuple[tuple[int, ...], ...]
    directed: bool

    def __post_init__(self) -> None:
        n = len(self.matrix)
        for i, row in enumerate(self.matrix):
            if len(row) != n:
                raise ValueError("adjacency matrix is not square")
            if row[i]:
                raise ValueError("self-loops are not allowed")
            for j, code in enumerate(row):
                if self.matrix[j][i] != reverse_code(code):
                    raise ValueError(f"inconsistent connection between {i} and {j}")
                if not self.directed and code not in (0, 3):
                    raise ValueError("undirected graphs only use codes 0 and 3")

    @property
    def size(self) -> int:
        return len(self.matrix)

    @classmethod
    def from_edges(
        cls, size: int, edges: Iterable[tuple[int, int]], directed: bool
    ) -> "SmallGraph":
        m = [[0] * size for _ in range(size)]
        for u, v in edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            if directed:
                m[u][v] |= OUT_BIT
                m[v][u] |= IN_BIT
            else:
                m[u][v] = m[v][u] = 3
        return cls(tuple(map(tuple, m)), directed)

    def permuted(self, order: Sequence[int]) -> "SmallGraph":
        """Graph whose position ``p`` is vertex ``order[p]`` of this graph."""
        m = self.matrix
        return SmallGraph(
            tuple(tuple(m[a][b] for b in order) for a in order), self.directed
        )

    def is_connected(self) -> bool:
        """Weak connectivity."""
        n = self.size
        if n == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v, code in enumerate(self.matrix[u]):
                if code and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == n

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, row in enumerate(self.matrix):
            for v, code in enumerate(row):
                if self.directed and code & OUT_BIT:
                    out.append((u, v))
                elif not self.directed and code and u < v:
                    out.append((u, v))
        return out

    @cached_property
    def _search(self) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
        _check_size(self)
        return _optimal_orderings(self.matrix)


@dataclass(frozen=True)
class CanonicalForm:
    """``key`` identifies the isomorphism class; ``order[p]`` is the input
    vertex placed at canonical position ``p``."""

    key: bytes
    order: tuple[int, ...]


def _check_size(g: SmallGraph) -> None:
    limit = k_max(g.directed)
    if g.size > limit:
        kind = "directed" if g.directed else "undirected"
        raise ValueError(f"{kind} graphs are limited to {limit} nodes, got {g.size}")
    if g.size < 1:
        raise ValueError("graph has no nodes")


def _signature(row: Sequence[int]) -> tuple[int, int, int, int]:
    both = out = inn = 0
    for code in row:
        if code == 3:
            both += 1
        elif code == OUT_BIT:
            out += 1
        elif code == IN_BIT:
            inn += 1
    return (both + out + inn, both, out, inn)


def _optimal_orderings(matrix):
    """Return the maximal encoding and all orderings attaining it."""
    n = len(matrix)
    sig = [_signature(row) for row in matrix]
    best: list[tuple] = []
    results: list[tuple[int, ...]] = []
    order: list[int] = []
    used = [False] * n

    def rec(depth: int) -> None:
        if depth == n:
            results.append(tuple(order))
            return
        items = []
        for v in range(n):
            if not used[v]:
                row = matrix[v]
                items.append(((tuple(row[u] for u in order), sig[v]), v))
        top = max(item for item, _ in items)
        if depth < len(best):
            if top < best[depth]:
                return
            if top > best[depth]:
                del best[depth:]
                results.clear()
                best.append(top)
        else:
            best.append(top)
        for item, v in items:
            if item != top:
                continue
            used[v] = True
            order.append(v)
            rec(depth + 1)
            order.pop()
            used[v] = False

    rec(0)
    codes = tuple(pattern for pattern, _ in best)
    return codes, tuple(results)


def canonical_form(g: SmallGraph) -> CanonicalForm:
    codes, orderings = g._search
    flat = [g.size]
    for pattern in codes:
        flat.extend(pattern)
    return CanonicalForm(bytes(flat), orderings[0])


def canonical_graph(g: SmallGraph) -> SmallGraph:
    return g.permuted(canonical_form(g).order)


def automorphisms(g: SmallGraph) -> list[tuple[int, ...]]:
    """All permutations ``a`` (vertex ``v`` maps to ``a[v]``) preserving ``g``.

    The identity is always first.
    """
    _, orderings = g._search
    base = orderings[0]
    auts = []
    for other in orderings:
        perm = [0] * g.size
        for p, v in enumerate(base):
            perm[v] = other[p]
        auts.append(tuple(perm))
    auts.sort(key=lambda a: a != tuple(range(g.size)))
    return auts


def orbits_from_automorphisms(
    size: int, auts: Iterable[Sequence[int]]
) -> list[tuple[int, ...]]:
    parent = list(range(size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in auts:
        for v, w in enumerate(a):
            rv, rw = find(v), find(w)
            if rv != rw:
                parent[max(rv, rw)] = min(rv, rw)
    classes: dict[int, list[int]] = {}
    for v in range(size):
        classes.setdefault(find(v), []).append(v)
    return sorted((tuple(c) for c in classes.values()), key=lambda c: c[0])


def vertex_orbits(g: SmallGraph) -> list[tuple[int, ...]]:
    """Automorphism classes of vertex positions, ordered by smallest member."""
    return orbits_from_automorphisms(g.size, automorphisms(g))


def is_isomorphic(a: SmallGraph, b: SmallGraph) -> bool:
    return a.directed == b.directed and canonical_form(a).key == canonical_form(b).key
