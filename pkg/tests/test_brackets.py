import random
from fractions import Fraction

import pytest

from graphcx import (Chain, SymTensor, boundary, boundary_extended, canonicalize, enumerate_basis,
                     glue_polygon, mu_n, mu_n_extended, partial_i, phi_I, phi_n, phi_n_extended,
                     split_components, sym_product, theta_I, theta_i, theta_i_extended)
from graphcx.brackets import assemble, dart_orbits, split_graph
from graphcx.canon import aut_order
from graphcx.complex import contract_edge, product
from graphcx.graph import graph_from_edges

COMM3 = [g for n in (3, 4) for v in range(1, 2 * n - 1) for g in enumerate_basis("comm", n, v).elements]
ASSOC2 = list(enumerate_basis("assoc", 2, 1).elements + enumerate_basis("assoc", 2, 2).elements)
TRIVALENT5 = "C8:0-1,0-1,0-2,1-3,2-3,2-4,3-5,4-6,4-6,5-7,5-7,6-7"


def as_tensor(ch):
    t = SymTensor()
    for g, c in ch.items():
        t.add((g,), c)
    return t


def test_bigon_gluing_is_contraction(k4):
    for k in range(k4.ne):
        for rev in (False, True):
            assert glue_polygon([k4], [(0, k, rev)]) == contract_edge(k4, k)


def test_square_across_two_thetas(theta):
    out = glue_polygon([theta, theta], [(0, 0, False), (1, 0, False)])
    (g, _), = out.items()
    assert (g.nv, g.ne, g.b1(), g.n_components()) == (3, 5, 3, 1)


def test_loop_side_gives_zero(theta):
    # head of edge 0 is the tail of reversed edge 1, so t_1 is a loop
    assert glue_polygon([theta], [(0, 0, False), (0, 1, True)]) == 0


def test_malformed_site(theta):
    with pytest.raises(ValueError):
        glue_polygon([theta], [(0, 7, False)])
    with pytest.raises(ValueError):
        glue_polygon([theta], [(0, 0, False), (0, 0, True)])


def test_phi1_is_boundary():
    for g in COMM3 + ASSOC2:
        assert phi_n(SymTensor.of(g), 1) == boundary(Chain.basis(g))


def test_phi2_of_two_thetas(theta_c):
    out = phi_n(SymTensor.of(theta_c, theta_c), 2)
    assert out and all((g.nv, g.b1()) == (3, 3) for g in out)


def test_phi_grading():
    rng = random.Random(2)
    for _ in range(10):
        fs = [rng.choice(COMM3) for _ in range(2)]
        for g in phi_n(SymTensor.of(*fs), 2):
            assert g.nv == sum(f.nv for f in fs) - 1
            assert g.b1() == sum(f.b1() for f in fs) - 2 + 1


def test_phi2_graded_symmetry():
    for g in COMM3:
        for h in COMM3:
            sign = (-1) ** (g.nv * h.nv)
            assert phi_n(SymTensor.of(g, h), 2) == sign * phi_n(SymTensor.of(h, g), 2)


def test_arity_mismatch(theta_c):
    with pytest.raises(ValueError):
        phi_n(SymTensor.of(theta_c), 2)


def test_extended_phi_on_small_arity(theta_c):
    assert phi_n_extended(SymTensor.of(theta_c), 2) == SymTensor()
    t = SymTensor.of(theta_c, theta_c)
    assert phi_n_extended(t, 2) == as_tensor(phi_n(t, 2))


def test_odd_swap_sign():
    odd = [g for g in COMM3 if g.nv % 2][:2]
    a, b = odd
    assert SymTensor.of(a, b) == -1 * SymTensor.of(b, a)
    assert SymTensor.of(a, a) == SymTensor()


def test_mu1_counts_edges():
    for g in COMM3 + ASSOC2:
        assert mu_n(SymTensor.of(g), 1) == g.ne * Chain.basis(g)


def test_mu2_grading():
    for g in COMM3[:3]:
        for h in COMM3[:3]:
            for k in mu_n(SymTensor.of(g, h), 2):
                # two edges cut, two polygon edges added, nothing contracted
                assert k.b1() == g.b1() + h.b1() - 1 and k.nv == g.nv + h.nv


@pytest.mark.parametrize("n", [2, 3])
def test_homotopy_on_small_tensors(n):
    rng = random.Random(n)
    pool = COMM3[:4] + ASSOC2
    for _ in range(3):
        op = rng.choice(("comm", "assoc"))
        fs = [rng.choice([g for g in pool if g.operad.value == op]) for _ in range(n)]
        t = SymTensor.of(*fs)
        lhs = phi_n_extended(t, n)
        rhs = boundary_extended(mu_n_extended(t, n)) - mu_n_extended(boundary_extended(t), n)
        assert lhs == rhs


def test_partial1_is_twice_boundary():
    for g in COMM3 + ASSOC2:
        assert partial_i(g.graph, 1) == 2 * boundary(Chain.basis(g))


def test_partial2_ribbon_theta(ribbon_theta):
    out = partial_i(ribbon_theta, 2)
    assert all(g.n_components() in (1, 2) for g in out)


def test_partial_beyond_edge_count(theta):
    assert partial_i(theta, 4) == 0


def test_theta1_is_boundary():
    for g in COMM3 + ASSOC2:
        assert theta_i(g, 1) == as_tensor(boundary(Chain.basis(g)))


def test_theta3_regression(theta_c, k4):
    assert theta_i(theta_c, 3) == SymTensor()
    assert theta_i(canonicalize(k4)[0], 3) == SymTensor()


def test_theta2_grading():
    from graphcx import decode

    g = decode(TRIVALENT5)
    out = theta_i(g, 2)
    assert out
    for key, _ in out.items():
        assert len(key) == 2
        assert sum(f.nv for f in key) == g.nv - 1
        assert sum(f.b1() for f in key) == g.b1() + 2 - 1


def test_theta_rejects_disconnected(theta):
    with pytest.raises(ValueError):
        theta_i(theta.disjoint_union(theta), 2)


def test_theta_extended_reduces_and_is_derivation(theta_c):
    from graphcx import decode

    g = decode(TRIVALENT5)
    assert theta_i_extended(SymTensor.of(g), 2) == theta_i(g, 2)
    for h in COMM3[:3]:
        lhs = theta_i_extended(SymTensor.of(g, h), 2)
        rhs = (sym_product(theta_i(g, 2), SymTensor.of(h))
               + (-1) ** g.nv * sym_product(SymTensor.of(g), theta_i(h, 2)))
        assert lhs == rhs


def test_theta1_extended_is_boundary_extended():
    t = SymTensor.of(COMM3[2], COMM3[3]) + SymTensor.of(COMM3[1], coeff=3)
    assert theta_i_extended(t, 1) == boundary_extended(t)


def test_phi_corollary_small():
    t = SymTensor.of(COMM3[0], COMM3[2]) + SymTensor.of(COMM3[1])
    assert phi_I(phi_I(t, (1, 2)), (1, 2)) == SymTensor()
    assert phi_I(t, (1,)) == boundary_extended(t)


def test_theta_corollary_small():
    from graphcx import decode

    t = SymTensor.of(decode(TRIVALENT5))
    assert theta_I(theta_I(t, (1, 2)), (1, 2)) == SymTensor()


def test_split_and_assemble(theta, k4):
    u = product(Chain.from_graph(theta), Chain.from_graph(k4))
    t = split_components(u)
    assert all(len(k) == 2 for k, _ in t.items())
    assert assemble(t) == u
    (g, _), = Chain.from_graph(theta).items()
    assert split_components(Chain.basis(g)) == SymTensor.of(g)


def test_split_graph_odd_blocks():
    odd = [g for g in COMM3 if g.nv % 2][:2]
    a, b = odd
    fa, sa = split_graph(a.graph.disjoint_union(b.graph))
    fb, sb = split_graph(b.graph.disjoint_union(a.graph))
    assert fa == fb and sa == -sb


def test_dart_orbits_cover_all_darts(theta_c, k4):
    for g in (theta_c, canonicalize(k4)[0]):
        orbits = dart_orbits(g)
        assert sum(s for _, s in orbits) == 2 * g.ne
    assert dart_orbits(theta_c) == ((0, 6),)


def test_half_normalisation_is_exact():
    t = phi_n(SymTensor.of(COMM3[0], COMM3[0]), 2)
    assert all(isinstance(c, Fraction) for _, c in t.items())
