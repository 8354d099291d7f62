# # Fusion and fission brackets
#
# Fusion phi_n glues a 2n-gon onto n directed edges lying in n different
# graphs and contracts one of the new edges. Fission theta_i does the same
# inside one connected graph and keeps the terms that fall apart into exactly
# i pieces. Elements of the symmetric algebra are SymTensors.

from graphcx import (SymTensor, boundary_extended, decode, enumerate_basis, mu_n_extended, phi_n,
                     phi_n_extended, theta_i)

theta = enumerate_basis("comm", 2, 2).elements[0]
print(theta.encoding)


# phi_2 of two thetas lands in three vertices and three loops.

print(phi_n(SymTensor.of(theta, theta), 2))


# phi_1 is the boundary.

g = enumerate_basis("comm", 3, 4).elements[1]
print(phi_n(SymTensor.of(g), 1))


# The homotopy mu_n glues without contracting. phi_n is its commutator with the
# boundary.

t = SymTensor.of(g, theta)
lhs = phi_n_extended(t, 2)
rhs = boundary_extended(mu_n_extended(t, 2)) - mu_n_extended(boundary_extended(t), 2)
print("phi_2 = [d, mu_2]:", lhs == rhs)


# Fission into two pieces needs five loops: each piece must carry at least two.

big = decode("C8:0-1,0-1,0-2,1-3,2-3,2-4,3-5,4-6,4-6,5-7,5-7,6-7")
for factors, c in theta_i(big, 2).sorted_items():
    print(c, [f.encoding for f in factors])
