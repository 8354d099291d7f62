# # The boundary operator and homology ranks
#
# The boundary contracts each non-loop edge in turn. Basis slices are indexed
# by the loop number n and the vertex count V, and homology ranks come from
# exact elimination on the boundary matrices.

from graphcx import Chain, boundary, coboundary, enumerate_basis, homology_table, inner_product

# The Comm basis at three loops: one graph with three vertices, two with four.

for v in range(1, 5):
    print(v, [g.encoding for g in enumerate_basis("comm", 3, v).elements])


# Boundary of the two trivalent graphs, and its square.

for g in enumerate_basis("comm", 3, 4).elements:
    d = boundary(Chain.basis(g))
    print(g.encoding, "->", d, "| dd =", boundary(d))


# The coboundary splits vertices. It is adjoint to the boundary for the
# pairing that weighs a graph by the order of its automorphism group.

g = enumerate_basis("comm", 3, 3).elements[0]
for h in enumerate_basis("comm", 3, 4).elements:
    print(inner_product(coboundary(Chain.basis(g)), Chain.basis(h)),
          inner_product(Chain.basis(g), boundary(Chain.basis(h))))


# Homology tables. The Euler identity is a consistency check on the ranks.

for op, n in [("comm", 2), ("comm", 3), ("comm", 4), ("assoc", 2), ("assoc", 3)]:
    t = homology_table(op, n, dense_check=True)
    print(op, n, [(r.nv, r.dim, r.betti) for r in t.rows], "euler ok" if t.euler_holds() else "EULER FAILS")


# Tables export with a manifest of the sign and normalization conventions.

print(homology_table("comm", 3).to_csv())
