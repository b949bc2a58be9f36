"""Input networks: edge-list parsing and constant-time connection queries.

Connections are stored from the perspective of the first endpoint as a
2-bit code: bit 1 (value 2) means ``u -> v``, bit 0 (value 1) means
``v -> u``. Undirected edges are stored as the reciprocal code 3, so a
single integer representation serves both directed and undirected graphs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import IntEnum
from typing import IO, Iterable, Sequence

logger = logging.getLogger(__name__)


class ConnectionType(IntEnum):
    NONE = 0
    IN = 1
    OUT = 2
    BOTH = 3
    # An undirected edge is a reciprocal connection; EDGE aliases BOTH.
    EDGE = 3


OUT_BIT = 2
IN_BIT = 1


class GraphFormatError(ValueError):
    """Raised when an edge list cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def reverse_code(code: int) -> int:
    """Swap the out and in bits of a connection code."""
    return ((code & OUT_BIT) >> 1) | ((code & IN_BIT) << 1)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable network over dense node indices ``0..node_count-1``.

    ``adjacency[u]`` maps each neighbor ``v`` (in any direction) to the
    connection code of ``(u, v)``; ``neighbors[u]`` holds the same
    neighbors as a sorted tuple for enumeration.
    """

    directed: bool
    adjacency: tuple[dict[int, int], ...]
    node_labels: tuple[str, ...]
    self_loops_dropped: int = 0
    neighbors: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.adjacency) != len(self.node_labels):
            raise ValueError("adjacency and node_labels differ in length")
        object.__setattr__(
            self, "neighbors", tuple(tuple(sorted(a)) for a in self.adjacency)
        )

    @property
    def node_count(self) -> int:
        return len(self.adjacency)

    def connection_type(self, u: int, v: int) -> ConnectionType:
        n = self.node_count
        if not (0 <= u < n and 0 <= v < n):
            raise IndexError(f"node index out of range: ({u}, {v}) with n={n}")
        return ConnectionType(self.adjacency[u].get(v, 0))

    def degree(self, u: int) -> int:
        """Number of distinct neighbors of ``u`` in any direction."""
        return len(self.adjacency[u])

    def edges(self) -> list[tuple[int, int]]:
        """Ordered edges ``(u, v)`` for directed graphs, ``u < v`` pairs otherwise."""
        out = []
        for u, row in enumerate(self.adjacency):
            for v in sorted(row):
                code = row[v]
                if self.directed:
                    if code & OUT_BIT:
                        out.append((u, v))
                elif u < v:
                    out.append((u, v))
        return out

    @property
    def edge_count(self) -> int:
        return len(self.edges())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.directed == other.directed
            and self.node_labels == other.node_labels
            and self.adjacency == other.adjacency
        )

    def __hash__(self) -> int:
        return hash((self.directed, self.node_labels))

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"Graph({kind}, n={self.node_count}, edges={self.edge_count})"


def from_edges(
    edges: Iterable[tuple[int, int]],
    node_count: int,
    directed: bool,
    labels: Sequence[str] | None = None,
) -> Graph:
    """Build a graph from index pairs; duplicates merge and self-loops drop."""
    adjacency: list[dict[int, int]] = [{} for _ in range(node_count)]
    loops = 0
    for u, v in edges:
        if not (0 <= u < node_count and 0 <= v < node_count):
            raise IndexError(f"edge ({u}, {v}) out of range for n={node_count}")
        if u == v:
            loops += 1
            continue
        if directed:
            adjacency[u][v] = adjacency[u].get(v, 0) | OUT_BIT
            adjacency[v][u] = adjacency[v].get(u, 0) | IN_BIT
        else:
            adjacency[u][v] = 3
            adjacency[v][u] = 3
    if labels is None:
        labels = [str(i) for i in range(node_count)]
    return Graph(directed, tuple(adjacency), tuple(labels), loops)


def load_edge_list(source: IO[str] | IO[bytes] | Iterable, directed: bool) -> Graph:
    """Parse a whitespace-separated ``u v [w]`` edge list.

    Labels are mapped to dense indices in order of first appearance. Lines
    starting with ``#`` or ``%`` are comments and a third (weight) token is
    ignored.
    """
    index: dict[str, int] = {}
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        line = line.strip()
        if not line or line[0] in "#%":
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise GraphFormatError(f"expected 'u v [w]', got {line!r}", lineno)
        ids = []
        for tok in tokens[:2]:
            if tok not in index:
                index[tok] = len(index)
            ids.append(index[tok])
        pairs.append((ids[0], ids[1]))
    if not pairs:
        raise GraphFormatError("edge list is empty")
    g = from_edges(pairs, len(index), directed, labels=list(index))
    if g.self_loops_dropped:
        logger.warning("dropped %d self-loop(s)", g.self_loops_dropped)
    return g


def read_edge_list(path: str, directed: bool) -> Graph:
    with open(path, "rb") as fh:
        return load_edge_list(fh, directed)


def write_edge_list(g: Graph, sink: IO[str]) -> None:
    """Write a normalized edge list using the original labels.

    Edges introducing each node come first, in index order, so reloading
    the output reproduces the same dense indices. A node that cannot be
    introduced by an edge is written as a self-loop line, which registers
    its label and is then dropped by the loader.
    """
    labels = g.node_labels
    adj = g.adjacency
    written: set[tuple[int, int]] = set()
    lines: list[tuple[int, int]] = []

    def emit(u: int, v: int) -> None:
        if (u, v) not in written:
            written.add((u, v))
            lines.append((u, v))

    def emit_pair(u: int, v: int) -> None:
        code = adj[u][v]
        if not g.directed:
            emit(min(u, v), max(u, v))
            return
        if code & OUT_BIT:
            emit(u, v)
        if code & IN_BIT:
            emit(v, u)

    seen: set[int] = set()
    for i in range(g.node_count):
        if i in seen:
            continue
        earlier = [j for j in g.neighbors[i] if j in seen]
        if earlier:
            emit_pair(i, earlier[0])
        elif i + 1 < g.node_count and adj[i].get(i + 1, 0) & OUT_BIT:
            lines.append((i, i + 1))
            written.add((i, i + 1))
            seen.add(i + 1)
        else:
            lines.append((i, i))
        seen.add(i)
    for u, v in g.edges():
        emit(u, v)
    for u, v in lines:
        sink.write(f"{labels[u]} {labels[v]}\n")


def reciprocity(g: Graph) -> float:
    """Fraction of ordered edges ``(u, v)`` whose reverse ``(v, u)`` also exists."""
    if not g.directed:
        raise ValueError("reciprocity is undefined for undirected graphs")
    total = reciprocated = 0
    for row in g.adjacency:
        for code in row.values():
            if code & OUT_BIT:
                total += 1
                if code == 3:
                    reciprocated += 1
    if total == 0:
        raise ValueError("reciprocity is undefined for a graph without edges")
    return reciprocated / total


def to_undirected(g: Graph) -> Graph:
    adjacency = tuple({v: 3 for v in row} for row in g.adjacency)
    return Graph(False, adjacency, g.node_labels, g.self_loops_dropped)
