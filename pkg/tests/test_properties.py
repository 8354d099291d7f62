import random

from hypothesis import given, settings
from hypothesis import strategies as st

from graphcx import (Chain, SymTensor, boundary, canonicalize, dense_rank, enumerate_basis, phi_n,
                     random_graph, rank, theta_i)
from graphcx import io as gio
from graphcx.enumeration import oracle_canonicalize, random_relabel

operads = st.sampled_from(["comm", "assoc"])
seeds = st.integers(0, 2**32 - 1)


def nonempty(op, n, v):
    if n <= 4:
        return len(enumerate_basis(op, n, v)) > 0
    # five loops: every ribbon slice is populated, Comm from three vertices on
    return op == "assoc" or v >= 3


def sample(op, seed, max_loops=4):
    rng = random.Random(seed)
    slices = [(n, v) for n in range(2, max_loops + 1) for v in range(1, 2 * n - 1) if nonempty(op, n, v)]
    n, v = rng.choice(slices)
    return random_graph(op, n, v, rng), rng


@settings(max_examples=60, deadline=None)
@given(operads, seeds)
def test_canonical_form_is_relabel_invariant(op, seed):
    g, rng = sample(op, seed)
    og, s = random_relabel(g.graph, rng)
    assert canonicalize(og) == (g, s)


@settings(max_examples=30, deadline=None)
@given(operads, seeds)
def test_fast_canonical_form_matches_oracle(op, seed):
    g, rng = sample(op, seed, max_loops=3)
    if g.nv > 4:
        return
    og, _ = random_relabel(g.graph, rng)
    assert canonicalize(og)[0].encoding == oracle_canonicalize(og)[0]
    assert canonicalize(og)[1] == oracle_canonicalize(og)[1]


@settings(max_examples=40, deadline=None)
@given(operads, seeds)
def test_boundary_is_equivariant(op, seed):
    g, rng = sample(op, seed)
    og, s = random_relabel(g.graph, rng)
    assert boundary(Chain.from_graph(og)) == s * boundary(Chain.basis(g))


@settings(max_examples=40, deadline=None)
@given(operads, seeds)
def test_boundary_squares_to_zero(op, seed):
    g, _ = sample(op, seed, max_loops=5)
    assert boundary(boundary(Chain.basis(g))) == 0


@settings(max_examples=25, deadline=None)
@given(operads, seeds, seeds)
def test_phi2_symmetry(op, s1, s2):
    g, _ = sample(op, s1, max_loops=3)
    h, _ = sample(op, s2, max_loops=3)
    assert phi_n(SymTensor.of(g, h), 2) == (-1) ** (g.nv * h.nv) * phi_n(SymTensor.of(h, g), 2)


@settings(max_examples=25, deadline=None)
@given(operads, seeds)
def test_theta_grading(op, seed):
    g, _ = sample(op, seed, max_loops=5)
    for key, _ in theta_i(g, 2).items():
        assert sum(f.nv for f in key) == g.nv - 1
        assert sum(f.b1() for f in key) == g.b1() + 1


@settings(max_examples=40, deadline=None)
@given(operads, seeds)
def test_gcg_round_trip(op, seed):
    g, rng = sample(op, seed)
    og, _ = random_relabel(g.graph, rng)
    assert gio.gcg_to_graph(gio.graph_to_gcg(og)) == og


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=6))
def test_sparse_rank_matches_dense(rows):
    assert rank(rows) == dense_rank(rows)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10), st.integers(-5, 5), st.integers(-5, 5))
def test_chain_linearity(k, a, b):
    gs = enumerate_basis("assoc", 3, 3).elements
    g = Chain.basis(gs[k % len(gs)])
    assert boundary(a * g + b * g) == (a + b) * boundary(g)
