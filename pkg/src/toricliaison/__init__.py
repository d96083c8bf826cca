"""Toric ideals of bipartite graphs and their G-biliaison chains, checked exactly."""

from .graph import Graph, bipartition, delete_edge, delete_edges, enumerate_cycles, parse_graph, strip_leaves
from .groebner import IdealPresentation, MonomialIdeal, buchberger, height, ideal_equal, normal_form
from .liaison import ChainCertificate, run_chain
from .pom import PathOrderedMatching, build_I, compute_M, extend_pom, validate_pom
from .poly import LexOrder, Monomial
from .simplicial import SimplicialComplex, complex_of, is_vertex_decomposable
from .toric import kernel_member, toric_ideal

__version__ = "0.1.0"
