"""Small bundled networks with known properties."""

from __future__ import annotations

from .graph import Graph, from_edges


def discrimination_pair() -> tuple[Graph, Graph]:
    """Two 4-node digraphs with the same undirected shape (a path) but
    different edge directions: ``a->b->c->d`` and ``a->b<-c->d``.

    Undirected graphlet statistics cannot tell them apart; directed ones can.
    """
    labels = ["a", "b", "c", "d"]
    chain = from_edges([(0, 1), (1, 2), (2, 3)], 4, True, labels)
    mixed = from_edges([(0, 1), (2, 1), (2, 3)], 4, True, labels)
    return chain, mixed
