"""Serialization: the ``.gcg`` graph format, chain and tensor records, and
basis bundles.

``.gcg`` documents are JSON with 1-based labels.  Vertex ``v`` is attached
to half-edge ``h`` when ``incidence[h-1] == v``; ``pairing`` lists the edges
as half-edge pairs; ``vertexOrder[v-1]`` is the position of vertex ``v``;
``edgeHeads`` names the head half-edge of each edge in ``pairing`` order.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .brackets import SymTensor
from .canon import CanonicalGraph, decode
from .complex import Chain
from .graph import HalfEdgeGraph, Operad, Orientation, OrientedGraph, orient

FORMAT_VERSION = 1


def dumps(doc: Any) -> str:
    """Byte-stable JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"


# --- graphs -----------------------------------------------------------------------

def graph_to_gcg(og: OrientedGraph) -> dict:
    doc = {
        "version": FORMAT_VERSION,
        "operad": og.operad.value,
        "vertexCount": og.nv,
        "incidence": [v + 1 for v in og.ends],
        "pairing": [[2 * k + 1, 2 * k + 2] for k in range(og.ne)],
        "vertexOrder": list(range(1, og.nv + 1)),
        "edgeHeads": [2 * k + 2 for k in range(og.ne)],
    }
    if og.rot is not None:
        doc["cyclicOrders"] = [[h + 1 for h in cyc] for cyc in og.rot]
    return doc


def _need(doc: dict, key: str):
    if key not in doc:
        raise ValueError(f"missing field {key!r}")
    return doc[key]


def gcg_to_graph(doc: dict) -> OrientedGraph:
    """Parse and validate a ``.gcg`` document."""
    if _need(doc, "version") != FORMAT_VERSION:
        raise ValueError(f"unsupported .gcg version {doc['version']!r}")
    operad = Operad.parse(_need(doc, "operad"))
    nv = int(_need(doc, "vertexCount"))
    incidence = [int(v) - 1 for v in _need(doc, "incidence")]
    nh = len(incidence)
    pairing = [-1] * nh
    for pair in _need(doc, "pairing"):
        if len(pair) != 2:
            raise ValueError("pairing entries must be half-edge pairs")
        a, b = int(pair[0]) - 1, int(pair[1]) - 1
        if not (0 <= a < nh and 0 <= b < nh) or pairing[a] != -1 or pairing[b] != -1:
            raise ValueError("pairing is not a fixed-point-free involution")
        pairing[a], pairing[b] = b, a
    cyc = doc.get("cyclicOrders")
    cyc = tuple(tuple(int(h) - 1 for h in c) for c in cyc) if cyc is not None else None
    hg = HalfEdgeGraph(operad, nv, tuple(incidence), tuple(pairing), cyc)
    order = tuple(int(p) - 1 for p in _need(doc, "vertexOrder"))
    heads = tuple(int(h) - 1 for h in _need(doc, "edgeHeads"))
    return orient(hg, Orientation(order, heads))


def write_gcg(og: OrientedGraph, path) -> None:
    Path(path).write_text(dumps(graph_to_gcg(og)))


def read_gcg(path) -> OrientedGraph:
    return gcg_to_graph(json.loads(Path(path).read_text()))


# --- chains and tensors ---------------------------------------------------------

def _num_den(c: Fraction) -> tuple[int, int]:
    c = Fraction(c)
    return c.numerator, c.denominator


def chain_to_doc(c: Chain) -> dict:
    return {
        "version": FORMAT_VERSION,
        "kind": "chain",
        "terms": [
            {"encoding": g.encoding, "num": n, "den": d}
            for g, x in c.sorted_items()
            for n, d in [_num_den(x)]
        ],
    }


def chain_from_doc(doc: dict) -> Chain:
    out = Chain()
    for rec in doc.get("terms", []):
        out = out + Chain.basis(decode(rec["encoding"]), Fraction(rec["num"], rec["den"]))
    return out


def tensor_to_doc(t: SymTensor) -> dict:
    return {
        "version": FORMAT_VERSION,
        "kind": "tensor",
        "terms": [
            {"factors": [g.encoding for g in key], "num": n, "den": d}
            for key, x in t.sorted_items()
            for n, d in [_num_den(x)]
        ],
    }


def tensor_from_doc(doc: dict) -> SymTensor:
    out = SymTensor()
    for rec in doc.get("terms", []):
        out.add([decode(e) for e in rec["factors"]], Fraction(rec["num"], rec["den"]))
    return out


def load(path) -> Chain | SymTensor:
    """Read a chain, a tensor, or a ``.gcg`` graph (as a one-term chain)."""
    doc = json.loads(Path(path).read_text())
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: expected a JSON object")
    kind = doc.get("kind")
    if kind == "chain":
        return chain_from_doc(doc)
    if kind == "tensor":
        return tensor_from_doc(doc)
    if kind is None and "incidence" in doc:
        return Chain.from_graph(gcg_to_graph(doc))
    raise ValueError(f"{path}: unknown document kind {kind!r}")


def to_doc(x: Chain | SymTensor) -> dict:
    return chain_to_doc(x) if isinstance(x, Chain) else tensor_to_doc(x)


# --- bundles ----------------------------------------------------------------------

def basis_bundle(operad: Operad, loops: int, slices: dict[int, tuple[CanonicalGraph, ...]]) -> tuple[dict, dict[str, dict]]:
    """Manifest plus one document per slice, keyed by file name."""
    files = {}
    counts = []
    for nv in sorted(slices):
        name = f"{operad.value}_n{loops}_v{nv}.json"
        files[name] = {
            "version": FORMAT_VERSION,
            "kind": "bundle",
            "operad": operad.value,
            "loops": loops,
            "vertices": nv,
            "graphs": [dict(graph_to_gcg(g.graph), encoding=g.encoding) for g in slices[nv]],
        }
        counts.append({"vertices": nv, "count": len(slices[nv]), "file": name})
    manifest = {"version": FORMAT_VERSION, "operad": operad.value, "loops": loops, "slices": counts}
    return manifest, files
