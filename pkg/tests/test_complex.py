from fractions import Fraction

import pytest

from graphcx import (Chain, boundary, canonicalize, coboundary, contract_edge, enumerate_basis,
                     inner_product, is_irreducible, product, subcomplex_filter)
from graphcx.complex import contract_raw, insert_edge, vertex_splits
from graphcx.graph import graph_from_edges


def test_theta_contraction_is_killed(theta):
    for k in range(3):
        assert contract_edge(theta, k) == 0


def test_loop_contraction_is_zero(dumbbell):
    assert contract_raw(dumbbell, 0) == (None, 0)
    assert contract_edge(dumbbell, 2) == 0


def test_ribbon_contraction_splices_cyclic_orders():
    g = graph_from_edges("assoc", 2, [(0, 0), (0, 1), (1, 1)], rot=[[0, 1, 2], [3, 4, 5]])
    h, s = contract_raw(g, 1)
    assert h.nv == 1 and h.ne == 2 and s == 1
    assert h.rot == ((0, 1, 2, 3),)


def test_boundary_vanishes_on_theta_and_dumbbell(theta, dumbbell):
    assert boundary(Chain.from_graph(theta)) == 0
    assert boundary(Chain.from_graph(dumbbell)) == 0


def test_boundary_squares_to_zero():
    for op, n in (("comm", 3), ("assoc", 3)):
        for v in range(1, 5):
            for g in enumerate_basis(op, n, v).elements:
                assert boundary(boundary(Chain.basis(g))) == 0


def test_coboundary_of_trivalent_graph(k4):
    assert coboundary(Chain.from_graph(k4)) == 0


def test_inserted_edge_contracts_back():
    for g in enumerate_basis("comm", 3, 2).elements + enumerate_basis("assoc", 3, 2).elements:
        og = g.graph
        for v in range(og.nv):
            for part, other in vertex_splits(og, v):
                big, s = insert_edge(og, v, part, other)
                back, t = contract_raw(big, big.ne - 1)
                assert canonicalize(back) == (g, s * t)


def test_coboundary_nonzero_somewhere():
    assert any(coboundary(Chain.basis(g)) for g in enumerate_basis("comm", 3, 3).elements)


def test_adjoint_at_two_loops():
    lo = enumerate_basis("comm", 3, 3).elements
    hi = enumerate_basis("comm", 3, 4).elements
    for g in lo:
        for h in hi:
            a = inner_product(coboundary(Chain.basis(g)), Chain.basis(h))
            b = inner_product(Chain.basis(g), boundary(Chain.basis(h)))
            assert a == b


def test_product_graded_commutative(theta, k4):
    a, b = Chain.from_graph(theta), Chain.from_graph(k4)
    assert product(a, b) == product(b, a)
    t3 = enumerate_basis("comm", 3, 3).elements[0]
    c = Chain.basis(t3)
    # both factors odd: swapping costs a sign
    odd = enumerate_basis("comm", 4, 5).elements[0]
    assert product(c, Chain.basis(odd)) == -1 * product(Chain.basis(odd), c)


def test_product_with_zero_chain(theta):
    assert product(Chain.from_graph(theta), Chain()) == 0


def test_product_is_additive_in_b1(theta, k4):
    (g, _), = product(Chain.from_graph(theta), Chain.from_graph(k4)).items()
    assert g.b1() == 2 + 3 and g.n_components() == 2


def test_inner_product(theta, k4):
    t, k = Chain.from_graph(theta), Chain.from_graph(k4)
    assert inner_product(t, t) == 12
    assert inner_product(t, k) == 0
    assert inner_product(2 * t, 3 * t) == 6 * 12
    assert isinstance(inner_product(t, t), Fraction)


def test_filters(theta, k4):
    ribbon_dumbbell = graph_from_edges("assoc", 2, [(0, 0), (0, 1), (1, 1)], rot=[[0, 1, 2], [3, 4, 5]])
    d = Chain.from_graph(ribbon_dumbbell)
    assert d and subcomplex_filter(d, "irreducible") == 0
    t = Chain.from_graph(theta)
    assert subcomplex_filter(t, "irreducible") == t == subcomplex_filter(t, "connected")
    u = product(t, Chain.from_graph(k4))
    assert subcomplex_filter(u, "connected") == 0
    with pytest.raises(ValueError):
        subcomplex_filter(t, "planar")


def test_is_irreducible(theta, dumbbell):
    assert is_irreducible(canonicalize(theta)[0])
    assert not is_irreducible(canonicalize(dumbbell)[0])


def test_chain_arithmetic(theta):
    t = Chain.from_graph(theta)
    assert t - t == 0 and (t + t) == 2 * t and 0 * t == 0
