"""Generation of all connected graphlets of sizes ``2..k`` and their orbits."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import IO

from .isomorphism import (
    SmallGraph,
    canonical_form,
    canonical_graph,
    k_max,
    vertex_orbits,
)

# Known sizes for validating generation; index is k.
UNDIRECTED_COUNTS = {2: (1, 1), 3: (3, 4), 4: (9, 15), 5: (30, 73), 6: (142, 480),
                     7: (965, 4786), 8: (12082, 77275)}
DIRECTED_COUNTS = {2: (2, 3), 3: (15, 33), 4: (214, 730), 5: (9578, 45637),
                   6: (1540421, 9121657)}


class GraphletFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass
class GraphletSet:
    """Ordered non-isomorphic connected graphlets with global orbit ids.

    ``orbit_ids[g][p]`` is the global orbit of position ``p`` of graphlet
    ``g``; graphlets are stored in canonical vertex order.
    """

    k: int
    directed: bool
    graphlets: list[SmallGraph]
    keys: list[bytes]
    orbit_classes: list[list[tuple[int, ...]]]
    orbit_ids: list[tuple[int, ...]]
    orbit_count: int
    index: dict[bytes, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.index = {key: i for i, key in enumerate(self.keys)}

    def __len__(self) -> int:
        return len(self.graphlets)

    def orbit_of(self, graphlet: int, position: int) -> int:
        return self.orbit_ids[graphlet][position]

    def sizes(self) -> list[int]:
        return [g.size for g in self.graphlets]

    def graphlets_of_size(self, size: int) -> list[int]:
        return [i for i, g in enumerate(self.graphlets) if g.size == size]

    def orbit_sizes(self) -> list[int]:
        """Graphlet size owning each global orbit."""
        out = [0] * self.orbit_count
        for g, ids in zip(self.graphlets, self.orbit_ids):
            for o in ids:
                out[o] = g.size
        return out

    def lookup(self, g: SmallGraph) -> tuple[int, tuple[int, ...]]:
        """Graphlet index of ``g`` and the global orbit of each of its vertices."""
        form = canonical_form(g)
        gi = self.index[form.key]
        ids = self.orbit_ids[gi]
        orbits = [0] * g.size
        for p, v in enumerate(form.order):
            orbits[v] = ids[p]
        return gi, tuple(orbits)


def _assign_orbits(graphlets: list[SmallGraph]):
    classes, ids = [], []
    next_id = 0
    for g in graphlets:
        parts = vertex_orbits(g)
        per_pos = [0] * g.size
        for cls in parts:
            for p in cls:
                per_pos[p] = next_id
            next_id += 1
        classes.append(parts)
        ids.append(tuple(per_pos))
    return classes, ids, next_id


def generate(k: int, directed: bool) -> GraphletSet:
    """All connected graphlets of sizes ``2..k`` by canonical augmentation."""
    if not 2 <= k <= k_max(directed):
        raise ValueError(f"k must lie in 2..{k_max(directed)} for "
                         f"{'directed' if directed else 'undirected'} graphlets")
    alphabet = (0, 1, 2, 3) if directed else (0, 3)
    layer = [SmallGraph(((0,),), directed)]
    found: list[tuple[int, bytes, SmallGraph]] = []
    for size in range(2, k + 1):
        seen: dict[bytes, SmallGraph] = {}
        for base in layer:
            rows = [list(r) for r in base.matrix]
            for pattern in itertools.product(alphabet, repeat=size - 1):
                if not any(pattern):
                    continue
                m = [row + [_rev(c)] for row, c in zip(rows, pattern)]
                m.append(list(pattern) + [0])
                cand = SmallGraph(tuple(map(tuple, m)), directed)
                key = canonical_form(cand).key
                if key not in seen:
                    seen[key] = canonical_graph(cand)
        layer = [seen[key] for key in sorted(seen)]
        found.extend((size, key, seen[key]) for key in sorted(seen))
    graphlets = [g for _, _, g in found]
    keys = [key for _, key, _ in found]
    classes, ids, count = _assign_orbits(graphlets)
    return GraphletSet(k, directed, graphlets, keys, classes, ids, count)


def _rev(code: int) -> int:
    return ((code & 2) >> 1) | ((code & 1) << 1)


def matrix_string(g: SmallGraph) -> str:
    return "".join(str(c) for row in g.matrix for c in row)


def _parse_matrix(text: str, size: int, directed: bool) -> SmallGraph:
    if len(text) != size * size or not text.isdigit():
        raise ValueError(f"bad matrix encoding {text!r}")
    codes = [int(c) for c in text]
    return SmallGraph(
        tuple(tuple(codes[i * size:(i + 1) * size]) for i in range(size)), directed
    )


def dump(gs: GraphletSet, sink: IO[str]) -> None:
    """Write the set as text: a header line, then one line per graphlet.

    Graphlet lines read ``<size> <row-major matrix> <classes>`` where classes
    look like ``0,2=5;1=6`` (positions ``=`` global orbit id).
    """
    sink.write(f"graphlets k={gs.k} directed={int(gs.directed)} "
               f"count={len(gs)} orbits={gs.orbit_count}\n")
    for g, classes, ids in zip(gs.graphlets, gs.orbit_classes, gs.orbit_ids):
        cls = ";".join(",".join(map(str, c)) + f"={ids[c[0]]}" for c in classes)
        sink.write(f"{g.size} {matrix_string(g)} {cls}\n")


def load(source: IO[str]) -> GraphletSet:
    lines = ((i, ln) for i, ln in enumerate(source, start=1) if not ln.startswith("#"))
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise GraphletFormatError("empty graphlet file") from None
    try:
        head = dict(tok.split("=") for tok in header.split()[1:])
        k, directed = int(head["k"]), bool(int(head["directed"]))
        count, orbit_count = int(head["count"]), int(head["orbits"])
    except (KeyError, ValueError) as exc:
        raise GraphletFormatError(f"bad header: {exc}", lineno) from None
    graphlets, keys, all_classes, all_ids = [], [], [], []
    for lineno, line in lines:
        try:
            size_s, mat, cls = line.split()
            g = _parse_matrix(mat, int(size_s), directed)
            classes, per_pos = [], [0] * g.size
            for part in cls.split(";"):
                pos, oid = part.split("=")
                c = tuple(int(p) for p in pos.split(","))
                classes.append(c)
                for p in c:
                    per_pos[p] = int(oid)
        except ValueError as exc:
            raise GraphletFormatError(str(exc), lineno) from None
        graphlets.append(g)
        keys.append(canonical_form(g).key)
        all_classes.append(classes)
        all_ids.append(tuple(per_pos))
    if len(graphlets) != count:
        raise GraphletFormatError(f"expected {count} graphlets, found {len(graphlets)}")
    return GraphletSet(k, directed, graphlets, keys, all_classes, all_ids, orbit_count)
