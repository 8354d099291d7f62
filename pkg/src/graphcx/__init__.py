"""Exact-arithmetic engine for the Comm and Assoc graph complexes.

Graphs are oriented half-edge structures (:mod:`graphcx.graph`), reduced to
canonical basis elements with a sign (:mod:`graphcx.canon`).  Chains live in
:mod:`graphcx.complex`, the symmetric algebra with the fusion and fission
brackets in :mod:`graphcx.brackets`, and homology ranks in
:mod:`graphcx.homology`.
"""

from .brackets import (SymTensor, boundary_extended, glue_polygon, mu_n, mu_n_extended, partial_i,
                       phi_I, phi_n, phi_n_extended, split_components, sym_product, theta_I,
                       theta_i, theta_i_extended)
from .canon import (CanonicalGraph, aut_order, automorphism_group, canonicalize, decode,
                    find_isomorphism)
from .complex import (Chain, boundary, coboundary, contract_edge, inner_product, insert_edge,
                      is_connected, is_irreducible, product, subcomplex_filter)
from .enumeration import BasisSlice, basis_range, enumerate_basis, random_graph
from .graph import (HalfEdgeGraph, Operad, Orientation, OrientedGraph, act, graph_from_edges,
                    graph_stats, orient, validate)
from .homology import BoundaryMatrix, HomologyTable, boundary_matrix, dense_rank, homology_table, rank

__version__ = "0.1.0"

__all__ = [
    "BasisSlice", "BoundaryMatrix", "CanonicalGraph", "Chain", "HalfEdgeGraph", "HomologyTable",
    "Operad", "Orientation", "OrientedGraph", "SymTensor", "act", "aut_order",
    "automorphism_group", "basis_range", "boundary", "boundary_extended", "boundary_matrix",
    "canonicalize", "coboundary", "contract_edge", "decode", "dense_rank", "enumerate_basis",
    "find_isomorphism", "glue_polygon", "graph_from_edges", "graph_stats", "homology_table",
    "inner_product", "insert_edge", "is_connected", "is_irreducible", "mu_n", "mu_n_extended",
    "orient", "partial_i", "phi_I", "phi_n", "phi_n_extended", "product", "random_graph", "rank",
    "split_components", "subcomplex_filter", "sym_product", "theta_I", "theta_i",
    "theta_i_extended", "validate",
]
