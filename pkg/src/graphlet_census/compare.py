"""Graphlet degree distributions, GDD-agreement and network clustering."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage, to_tree
from scipy.spatial.distance import squareform

from .census import OrbitFrequencyMatrix, gtrie_census
from .graph import Graph
from .graphlets import generate
from .gtrie import GTrie, build

MODES = ("modified", "original")
METRIC_MODES = {"gda": "modified", "gda-prime": "original"}

SQRT1_2 = 1.0 / math.sqrt(2.0)


@dataclass
class GraphletDegreeDistribution:
    """``orbits[j]`` maps an appearance count ``k >= 1`` to the number of
    nodes appearing exactly ``k`` times in orbit ``j``."""

    orbits: list[dict[int, int]]

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)


@dataclass
class NormalizedGDD:
    orbits: list[dict[int, float]]
    present_orbits: frozenset[int]

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)


@dataclass
class SimilarityMatrix:
    ids: list[str]
    values: np.ndarray
    metric: str
    k: int
    directed: bool


def gdd(m: OrbitFrequencyMatrix) -> GraphletDegreeDistribution:
    orbits = []
    for column in m.counts.T:
        values, counts = np.unique(column[column > 0], return_counts=True)
        orbits.append({int(v): int(c) for v, c in zip(values, counts)})
    return GraphletDegreeDistribution(orbits)


def normalize(d: GraphletDegreeDistribution) -> NormalizedGDD:
    """Scale each bin by ``1/k`` and rescale each orbit to unit mass."""
    out: list[dict[int, float]] = []
    present = []
    for j, hist in enumerate(d.orbits):
        if not hist:
            out.append({})
            continue
        scaled = {k: c / k for k, c in hist.items()}
        total = math.fsum(scaled.values())
        out.append({k: v / total for k, v in scaled.items()})
        present.append(j)
    return NormalizedGDD(out, frozenset(present))


def gda_orbit(a: NormalizedGDD, b: NormalizedGDD, j: int) -> float:
    x, y = a.orbits[j], b.orbits[j]
    if x == y:
        return 1.0
    sq = math.fsum((x.get(k, 0.0) - y.get(k, 0.0)) ** 2 for k in sorted(x.keys() | y.keys()))
    return 1.0 - SQRT1_2 * math.sqrt(sq)


def gda(a: NormalizedGDD, b: NormalizedGDD, mode: str = "modified") -> float:
    """Arithmetic-mean GDD-agreement.

    ``original`` averages over every orbit; ``modified`` only over orbits
    present in at least one of the two networks.
    """
    if a.orbit_count != b.orbit_count:
        raise ValueError(f"orbit counts differ: {a.orbit_count} vs {b.orbit_count}")
    if mode == "original":
        orbits = range(a.orbit_count)
    elif mode == "modified":
        orbits = sorted(a.present_orbits | b.present_orbits)
        if not orbits:
            raise ValueError("no orbit appears in either network")
    else:
        raise ValueError(f"unknown GDA mode {mode!r}")
    if not orbits:
        raise ValueError("no orbits to compare")
    return math.fsum(gda_orbit(a, b, j) for j in orbits) / len(orbits)


def gda_matrix(
    networks: Sequence[Graph],
    k: int,
    directed: bool,
    mode: str = "modified",
    ids: Sequence[str] | None = None,
    trie: GTrie | None = None,
    workers: int | None = 1,
) -> SimilarityMatrix:
    if len(networks) < 2:
        raise ValueError("need at least two networks to compare")
    ids = list(ids) if ids is not None else [f"net{i}" for i in range(len(networks))]
    if trie is None:
        trie = build(generate(k, directed))
    dists = []
    for name, g in zip(ids, networks):
        if g.directed != directed:
            raise ValueError(f"network {name!r} has the wrong directedness")
        try:
            dists.append(normalize(gdd(gtrie_census(g, trie, workers=workers))))
        except Exception as exc:
            raise type(exc)(f"{name}: {exc}") from exc
    n = len(networks)
    values = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            values[i, j] = values[j, i] = gda(dists[i], dists[j], mode)
    metric = "gda" if mode == "modified" else "gda-prime"
    return SimilarityMatrix(ids, values, metric, k, directed)


def cluster(m: SimilarityMatrix) -> str:
    """Average-linkage dendrogram on ``1 - GDA`` as a Newick string.

    Leaves are processed in lexicographic id order so ties resolve the same
    way on every run; branch lengths are differences of merge heights,
    where a merge at distance ``d`` sits at height ``d / 2``.
    """
    n = len(m.ids)
    if n < 2:
        raise ValueError("clustering needs at least two networks")
    order = sorted(range(n), key=lambda i: m.ids[i])
    ids = [m.ids[i] for i in order]
    dist = 1.0 - m.values[np.ix_(order, order)]
    dist = np.clip((dist + dist.T) / 2.0, 0.0, None)
    np.fill_diagonal(dist, 0.0)
    root = to_tree(linkage(squareform(dist, checks=False), method="average"))

    def height(node) -> float:
        return node.dist / 2.0

    def first(node) -> str:
        return min(ids[i] for i in node.pre_order())

    def render(node, parent_height: float) -> str:
        length = _fmt(parent_height - height(node))
        if node.is_leaf():
            return f"{_newick_name(ids[node.id])}:{length}"
        kids = sorted((node.get_left(), node.get_right()), key=first)
        inner = ",".join(render(c, height(node)) for c in kids)
        return f"({inner}):{length}"

    kids = sorted((root.get_left(), root.get_right()), key=first)
    return "(" + ",".join(render(c, height(root)) for c in kids) + ");"


def _fmt(x: float) -> str:
    return f"{max(x, 0.0):.6f}"


def _newick_name(name: str) -> str:
    if any(ch in name for ch in " ():;,[]'"):
        return "'" + name.replace("'", "''") + "'"
    return name


def flat_clusters(m: SimilarityMatrix, count: int) -> list[set[str]]:
    """Cut the average-linkage tree into ``count`` groups of ids."""
    dist = 1.0 - m.values
    dist = np.clip((dist + dist.T) / 2.0, 0.0, None)
    np.fill_diagonal(dist, 0.0)
    labels = fcluster(linkage(squareform(dist, checks=False), method="average"),
                      count, criterion="maxclust")
    groups: dict[int, set[str]] = {}
    for name, lab in zip(m.ids, labels):
        groups.setdefault(int(lab), set()).add(name)
    return sorted(groups.values(), key=lambda s: min(s))
