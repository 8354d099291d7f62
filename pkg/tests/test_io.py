import json

import pytest

from graphcx import Chain, Operad, SymTensor, enumerate_basis
from graphcx import io as gio


def test_gcg_round_trip(k4, ribbon_theta):
    for og in (k4, ribbon_theta):
        doc = gio.graph_to_gcg(og)
        assert gio.gcg_to_graph(json.loads(gio.dumps(doc))) == og


def test_gcg_is_one_based(theta):
    doc = gio.graph_to_gcg(theta)
    assert min(doc["incidence"]) == 1 and doc["pairing"][0] == [1, 2]
    assert "cyclicOrders" not in doc


def test_gcg_rejects_bad_documents(theta):
    doc = gio.graph_to_gcg(theta)
    with pytest.raises(ValueError):
        gio.gcg_to_graph(dict(doc, version=99))
    with pytest.raises(ValueError):
        gio.gcg_to_graph({k: v for k, v in doc.items() if k != "pairing"})
    with pytest.raises(ValueError):
        gio.gcg_to_graph(dict(doc, pairing=[[1, 2], [1, 3], [5, 6]]))


def test_chain_round_trip(tmp_path):
    gs = enumerate_basis("assoc", 3, 2).elements
    c = Chain.basis(gs[0], 3) + Chain.basis(gs[1], -1) + (1 / 2) * Chain.basis(gs[2])
    p = tmp_path / "c.json"
    p.write_text(gio.dumps(gio.to_doc(c)))
    assert gio.load(p) == c


def test_tensor_round_trip(tmp_path):
    gs = enumerate_basis("comm", 4, 5).elements
    t = SymTensor.of(gs[0], gs[1], coeff=-2) + SymTensor.of(gs[2])
    p = tmp_path / "t.json"
    p.write_text(gio.dumps(gio.to_doc(t)))
    assert gio.load(p) == t


def test_load_gcg_as_chain(tmp_path, k4):
    p = tmp_path / "g.gcg"
    gio.write_gcg(k4, p)
    assert gio.load(p) == Chain.from_graph(k4)
    assert gio.read_gcg(p) == k4


def test_load_unknown_kind(tmp_path):
    p = tmp_path / "x.json"
    p.write_text('{"kind": "matrix"}')
    with pytest.raises(ValueError):
        gio.load(p)


def test_dumps_is_stable(theta):
    doc = gio.graph_to_gcg(theta)
    assert gio.dumps(doc) == gio.dumps(json.loads(gio.dumps(doc)))


def test_basis_bundle():
    slices = {v: enumerate_basis("comm", 3, v).elements for v in (3, 4)}
    manifest, files = gio.basis_bundle(Operad.COMM, 3, slices)
    assert [s["count"] for s in manifest["slices"]] == [1, 2]
    assert set(files) == {s["file"] for s in manifest["slices"]}
