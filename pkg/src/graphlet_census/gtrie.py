"""Graphlet-trie: shared-prefix tree of connection patterns.

A node at depth ``d`` adds vertex ``d`` to the graph spelled by its
ancestors; its pattern holds the connection codes from that vertex to
vertices ``0..d-1``. Counting nodes carry the graphlet they complete, the
global orbit of every path position, and symmetry-breaking conditions
``(a, b)`` meaning the graph node matched at position ``a`` must have a
smaller index than the one matched at ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Iterator

from .graphlets import GraphletSet
from .isomorphism import (
    SmallGraph,
    automorphisms,
    canonical_form,
    orbits_from_automorphisms,
)

Condition = tuple[int, int]


class GTrieFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(eq=False, slots=True)
class GTrieNode:
    depth: int
    pattern: tuple[int, ...]
    children: list["GTrieNode"] = field(default_factory=list)
    is_counting: bool = False
    graphlet_ref: int = -1
    orbit_ids: tuple[int, ...] = ()
    conditions: tuple[Condition, ...] = ()
    # Derived search data, filled by GTrie.prepare().
    child_by_pattern: dict = field(default_factory=dict, repr=False)
    # Per alternative condition set: (pairs fully decided before this depth,
    # positions that must precede the vertex placed at this depth).
    guards: tuple | None = field(default=None, repr=False)
    check_own: bool = field(default=False, repr=False)

    def walk(self) -> Iterator["GTrieNode"]:
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass(eq=False)
class GTrie:
    root: GTrieNode
    directed: bool
    max_depth: int
    source_set: GraphletSet

    def nodes(self) -> Iterator[GTrieNode]:
        """All nodes except the virtual root, depth first."""
        for c in self.root.children:
            yield from c.walk()

    def counting_nodes(self) -> list[GTrieNode]:
        return [n for n in self.nodes() if n.is_counting]

    def node_count(self) -> int:
        return sum(1 for _ in self.nodes())

    def prepare(self) -> None:
        """Index children by pattern and hoist symmetry conditions."""
        _prepare(self.root)

    def structure(self) -> list[tuple]:
        """Depth-first tuple listing used for structural comparison."""
        return [(n.depth, n.pattern, n.is_counting, n.graphlet_ref, n.orbit_ids,
                 n.conditions, len(n.children)) for n in self.nodes()]


def generate_conditions(g: SmallGraph) -> list[Condition]:
    """Symmetry-breaking conditions for ``g`` in its current vertex order.

    Repeatedly takes the smallest position with a nontrivial orbit under
    the remaining automorphisms, orders it before the rest of its orbit,
    and restricts to the stabilizer of that position.
    """
    auts = automorphisms(g)
    conditions: list[Condition] = []
    while len(auts) > 1:
        orbits = orbits_from_automorphisms(g.size, auts)
        cls = next(c for c in orbits if len(c) > 1)
        a = cls[0]
        conditions.extend((a, b) for b in cls[1:])
        auts = [x for x in auts if x[a] == a]
    return conditions


def path_graph(patterns: list[tuple[int, ...]], directed: bool) -> SmallGraph:
    """Graph spelled by the patterns along a root-to-node path."""
    n = len(patterns)
    m = [[0] * n for _ in range(n)]
    for d, pattern in enumerate(patterns):
        if len(pattern) != d:
            raise ValueError(f"pattern at depth {d} has length {len(pattern)}")
        for i, code in enumerate(pattern):
            m[d][i] = code
            m[i][d] = ((code & 2) >> 1) | ((code & 1) << 1)
    return SmallGraph(tuple(map(tuple, m)), directed)


def build(gs: GraphletSet) -> GTrie:
    root = GTrieNode(depth=-1, pattern=())
    for gi, g in enumerate(gs.graphlets):
        node = root
        for d in range(g.size):
            pattern = tuple(g.matrix[d][:d])
            child = next((c for c in node.children if c.pattern == pattern), None)
            if child is None:
                child = GTrieNode(depth=d, pattern=pattern)
                node.children.append(child)
            node = child
        node.is_counting = True
        node.graphlet_ref = gi
        node.orbit_ids = gs.orbit_ids[gi]
        node.conditions = tuple(generate_conditions(g))
    trie = GTrie(root, gs.directed, gs.k, gs)
    trie.prepare()
    return trie


def _minimal_sets(sets: set[frozenset]) -> list[frozenset]:
    # A superset is implied by any of its subsets in a disjunction.
    ordered = sorted(sets, key=lambda s: (len(s), sorted(s)))
    kept: list[frozenset] = []
    for s in ordered:
        if not any(k <= s for k in kept):
            kept.append(s)
    return kept


def _prepare(node: GTrieNode) -> set[frozenset]:
    """Fill derived fields; return the condition sets of the subtree."""
    sets: set[frozenset] = set()
    node.child_by_pattern = {}
    for c in node.children:
        node.child_by_pattern[c.pattern] = c
        sets |= _prepare(c)
    if node.is_counting:
        sets.add(frozenset(node.conditions))
    if node.depth < 0:
        return sets
    d = node.depth
    restricted = _minimal_sets({frozenset(p for p in s if p[1] <= d) for s in sets})
    if not restricted or any(not s for s in restricted):
        node.guards = None
    else:
        node.guards = tuple(
            (tuple(sorted(p for p in s if p[1] < d)),
             tuple(sorted(a for a, b in s if b == d)))
            for s in restricted
        )
    own = frozenset(node.conditions)
    node.check_own = node.is_counting and bool(own) and restricted != [own]
    return sets


def serialize(t: GTrie, sink: IO[str]) -> None:
    """Depth-first text encoding, one line per node.

    ``node <depth> <pattern> <counting> <graphlet> <orbits> <conditions>``
    where pattern is a digit string (``-`` when empty), orbits are
    comma-separated and conditions are ``a<b`` pairs joined by commas.
    """
    nodes = list(t.nodes())
    gs = t.source_set
    sink.write(f"gtrie k={t.max_depth} directed={int(t.directed)} "
               f"nodes={len(nodes)} graphlets={len(gs)} orbits={gs.orbit_count}\n")
    for n in nodes:
        pattern = "".join(map(str, n.pattern)) or "-"
        orbits = ",".join(map(str, n.orbit_ids)) or "-"
        conds = ",".join(f"{a}<{b}" for a, b in n.conditions) or "-"
        ref = n.graphlet_ref if n.is_counting else -1
        sink.write(f"node {n.depth} {pattern} {int(n.is_counting)} {ref} "
                   f"{orbits} {conds}\n")
    sink.write("end\n")


def _parse_node(line: str) -> GTrieNode:
    tag, depth, pattern, counting, ref, orbits, conds = line.split()
    if tag != "node":
        raise ValueError(f"expected 'node', got {tag!r}")
    d = int(depth)
    pat = () if pattern == "-" else tuple(int(c) for c in pattern)
    if len(pat) != d or any(c > 3 for c in pat):
        raise ValueError(f"pattern {pattern!r} does not fit depth {d}")
    node = GTrieNode(depth=d, pattern=pat)
    node.is_counting = counting == "1"
    node.graphlet_ref = int(ref)
    if orbits != "-":
        node.orbit_ids = tuple(int(x) for x in orbits.split(","))
    if conds != "-":
        node.conditions = tuple(
            tuple(int(x) for x in c.split("<")) for c in conds.split(",")
        )
    if node.is_counting and len(node.orbit_ids) != d + 1:
        raise ValueError("counting node needs one orbit id per position")
    return node


def deserialize(source: IO[str]) -> GTrie:
    """Parse a trie written by :func:`serialize` and rebuild its graphlet set."""
    lines = ((i, ln) for i, ln in enumerate(source, start=1) if not ln.startswith("#"))
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise GTrieFormatError("empty g-trie file") from None
    try:
        fields = header.split()
        if fields[0] != "gtrie":
            raise ValueError("not a g-trie file")
        head = dict(tok.split("=") for tok in fields[1:])
        k, directed = int(head["k"]), bool(int(head["directed"]))
        node_total = int(head["nodes"])
        graphlet_total, orbit_total = int(head["graphlets"]), int(head["orbits"])
    except (KeyError, ValueError, IndexError) as exc:
        raise GTrieFormatError(f"bad header: {exc}", lineno) from None

    root = GTrieNode(depth=-1, pattern=())
    stack = [root]
    seen = 0
    finished = False
    counting: dict[int, tuple[list, GTrieNode]] = {}
    for lineno, line in lines:
        line = line.strip()
        if not line:
            continue
        if line == "end":
            finished = True
            break
        try:
            node = _parse_node(line)
        except ValueError as exc:
            raise GTrieFormatError(str(exc), lineno) from None
        while stack[-1].depth >= node.depth:
            stack.pop()
        if stack[-1].depth != node.depth - 1:
            raise GTrieFormatError("depth jumps by more than one", lineno)
        stack[-1].children.append(node)
        stack.append(node)
        seen += 1
        if node.is_counting:
            if node.graphlet_ref in counting or not 0 <= node.graphlet_ref < graphlet_total:
                raise GTrieFormatError(f"bad graphlet reference {node.graphlet_ref}", lineno)
            counting[node.graphlet_ref] = ([n.pattern for n in stack[1:]], node)
    if not finished:
        raise GTrieFormatError("truncated g-trie file (missing 'end')")
    if seen != node_total:
        raise GTrieFormatError(f"expected {node_total} nodes, found {seen}")
    if len(counting) != graphlet_total:
        raise GTrieFormatError(
            f"expected {graphlet_total} counting nodes, found {len(counting)}")

    graphlets, keys, classes, ids = [], [], [], []
    for gi in range(graphlet_total):
        patterns, node = counting[gi]
        g = path_graph(patterns, directed)
        graphlets.append(g)
        keys.append(canonical_form(g).key)
        by_orbit: dict[int, list[int]] = {}
        for p, o in enumerate(node.orbit_ids):
            by_orbit.setdefault(o, []).append(p)
        classes.append(sorted((tuple(v) for v in by_orbit.values()), key=lambda c: c[0]))
        ids.append(node.orbit_ids)
    gs = GraphletSet(k, directed, graphlets, keys, classes, ids, orbit_total)
    trie = GTrie(root, directed, k, gs)
    trie.prepare()
    return trie
