# # Graphs, orientations and canonical forms
#
# A graph here is a set of half-edges glued into edges and attached to
# vertices. An orientation is an ordering of the vertices plus a direction on
# every edge, and relabelling by an odd element of S_V x Z_2^E flips the sign.

from graphcx import act, aut_order, canonicalize, graph_from_edges, graph_stats
from graphcx.graph import ReindexElement

# The theta graph: two vertices joined by three parallel edges.

theta = graph_from_edges("comm", 2, [(0, 1), (0, 1), (0, 1)])
print(graph_stats(theta))  # b1 = 2, connected, no bridge


# Canonicalization returns a basis element and the sign relating the input to it.

cg, sign = canonicalize(theta)
print(cg.encoding, sign)
print("automorphisms:", aut_order(cg))  # 12


# Swapping the two vertices is odd, so the relabelled graph is -theta.

swapped, s = act(theta, ReindexElement((1, 0)))
print(s, canonicalize(swapped)[1])  # -1 and -sign


# A vertex carrying two loops has an odd automorphism (reverse one loop), so it
# is zero in the complex.

two_loops = graph_from_edges("comm", 1, [(0, 0), (0, 0)])
print(canonicalize(two_loops))  # coefficient 0


# Ribbon graphs (the Assoc operad) carry a cyclic order of half-edges at each
# vertex. Edge k owns half-edges 2k and 2k+1.

planar = graph_from_edges("assoc", 2, [(0, 1)] * 3, rot=[[0, 2, 4], [1, 5, 3]])
twisted = graph_from_edges("assoc", 2, [(0, 1)] * 3, rot=[[0, 2, 4], [1, 3, 5]])
print(canonicalize(planar)[0].encoding)
print(canonicalize(twisted)[0].encoding)  # a different ribbon structure
