import sys

import pytest

from graphcx import Chain, canonicalize, graph_from_edges


def comm(nv, edges):
    return graph_from_edges("comm", nv, edges)


def canon(og):
    cg, c = canonicalize(og)
    assert c != 0
    return cg


@pytest.fixture
def theta():
    return comm(2, [(0, 1)] * 3)


@pytest.fixture
def two_loops():
    return comm(1, [(0, 0), (0, 0)])


@pytest.fixture
def dumbbell():
    return comm(2, [(0, 0), (0, 1), (1, 1)])


@pytest.fixture
def k4():
    return comm(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


@pytest.fixture
def ribbon_theta():
    # planar theta: both vertices see the three edges in the same cyclic order
    return graph_from_edges("assoc", 2, [(0, 1)] * 3, rot=[[0, 2, 4], [1, 5, 3]])


@pytest.fixture
def theta_c(theta):
    return canon(theta)


def basis_chain(og, coeff=1):
    return Chain.from_graph(og, coeff)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
