import random

import pytest

from graphcx import aut_order, automorphism_group, canonicalize, decode, find_isomorphism
from graphcx.canon import block_permutation_sign
from graphcx.enumeration import enumerate_basis, oracle_canonicalize, random_relabel
from graphcx.graph import ReindexElement, act, graph_from_edges


def test_theta_survives(theta):
    _, c = canonicalize(theta)
    assert c != 0


def test_two_loop_vertex_is_killed(two_loops):
    cg, c = canonicalize(two_loops)
    assert c == 0 and cg.zero


def test_edge_flip_negates(k4):
    a, ca = canonicalize(k4)
    b, cb = canonicalize(act(k4, ReindexElement(tuple(range(4)), frozenset({3})))[0])
    assert a == b and ca == -cb


@pytest.mark.parametrize("name,order", [("theta", 12), ("two_loops", 8), ("k4", 24)])
def test_automorphism_orders(request, name, order):
    og = request.getfixturevalue(name)
    assert automorphism_group(og)[1] == order


def test_aut_order_of_canonical(theta_c):
    assert aut_order(theta_c) == 12


def test_asymmetric_ribbon_graph_has_trivial_group():
    rng = random.Random(3)
    for g in enumerate_basis("assoc", 3, 4).elements:
        if aut_order(g) == 1:
            return
    pytest.fail("no asymmetric ribbon graph at three loops")


def test_relabelled_copy_has_same_encoding(k4):
    rng = random.Random(0)
    base, c0 = canonicalize(k4)
    for _ in range(20):
        og, s = random_relabel(k4, rng)
        cg, c = canonicalize(og)
        assert cg == base and c == s * c0


def test_oracle_agrees_on_small_graphs(theta, two_loops, ribbon_theta):
    for og in (theta, two_loops, ribbon_theta):
        cg, c = canonicalize(og)
        assert (cg.encoding, c) == oracle_canonicalize(og)


def test_find_isomorphism_maps_relabelled_copy(k4):
    og, _ = random_relabel(k4, random.Random(5))
    iso = find_isomorphism(k4, og)
    assert iso is not None


def test_decode_round_trip():
    for op in ("comm", "assoc"):
        for g in enumerate_basis(op, 3, 3).elements:
            assert decode(g.encoding) == g
            assert canonicalize(decode(g.encoding).graph) == (g, 1)


def test_decode_rejects_noncanonical():
    with pytest.raises(ValueError):
        decode("C2:1-0,0-1,0-1")


def test_disconnected_encoding_joins_components(theta, k4):
    cg, c = canonicalize(theta.disjoint_union(k4))
    assert cg.n_components() == 2 and c != 0


def test_block_swap_sign_for_odd_blocks():
    # two odd blocks of one vertex each: swapping them is a transposition
    assert block_permutation_sign([[1], [0]], 2) == -1
    assert block_permutation_sign([[0], [1]], 2) == 1
