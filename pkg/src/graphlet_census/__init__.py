"""Directed and undirected graphlet census with graphlet-tries."""

__version__ = "0.1.0"

from .census import OrbitFrequencyMatrix, esu_census, gdv, gtrie_census
from .compare import cluster, gda, gda_matrix, gda_orbit, gdd, normalize
from .graph import ConnectionType, Graph, load_edge_list, reciprocity, to_undirected
from .graphlets import GraphletSet, generate
from .gtrie import GTrie, build, deserialize, serialize
from .isomorphism import SmallGraph, automorphisms, canonical_form, vertex_orbits
from .samples import discrimination_pair

__all__ = [
    "ConnectionType", "Graph", "GraphletSet", "GTrie", "OrbitFrequencyMatrix",
    "SmallGraph", "automorphisms", "build", "canonical_form", "cluster",
    "deserialize", "discrimination_pair", "esu_census", "gda", "gda_matrix", "gda_orbit", "gdd", "gdv",
    "generate", "gtrie_census", "load_edge_list", "normalize", "reciprocity",
    "serialize", "to_undirected", "vertex_orbits",
]
