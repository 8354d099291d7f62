import json
import shutil
import subprocess

import pytest

from graphcx import Chain, SymTensor, boundary, enumerate_basis, phi_n, phi_n_extended
from graphcx import io as gio
from graphcx.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_usage_errors(capsys):
    assert run(capsys, "homology", "--operad", "lie", "--loops", "2")[0] == 2
    assert run(capsys)[0] == 2
    code, _, err = run(capsys, "basis", "--operad", "comm", "--loops", "3", "--vertices", "9")
    assert code == 2 and "out of range" in err


def test_missing_input_file(capsys, tmp_path):
    code, _, err = run(capsys, "op", "boundary", "--in", str(tmp_path / "nope.json"))
    assert code == 2 and err.startswith("graphcx: error")


def test_homology_is_deterministic(capsys):
    code, a, _ = run(capsys, "homology", "--operad", "comm", "--loops", "2", "--format", "csv")
    _, b, _ = run(capsys, "homology", "--operad", "comm", "--loops", "2", "--format", "csv")
    assert code == 0 and a == b
    code, js, _ = run(capsys, "homology", "--operad", "comm", "--loops", "2", "--dense-check")
    doc = json.loads(js)
    assert sum((-1) ** r["vertices"] * (r["dim"] - r["betti"]) for r in doc["rows"]) == 0


def test_basis_writes_bundle(capsys, tmp_path):
    code, out, _ = run(capsys, "basis", "--operad", "assoc", "--loops", "2", "--out", str(tmp_path))
    assert code == 0
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert json.loads(out) == manifest
    assert [s["count"] for s in manifest["slices"]] == [1, 3]


def test_op_boundary_and_phi(capsys, tmp_path):
    g = enumerate_basis("comm", 3, 4).elements[0]
    p = tmp_path / "g.json"
    p.write_text(gio.dumps(gio.to_doc(Chain.basis(g))))
    code, out, _ = run(capsys, "op", "boundary", "--in", str(p))
    assert code == 0 and gio.chain_from_doc(json.loads(out)) == boundary(Chain.basis(g))
    code, out, _ = run(capsys, "op", "phi", "--n", "2", "--in", str(p), str(p))
    assert gio.chain_from_doc(json.loads(out)) == phi_n(SymTensor.of(g, g), 2)
    assert run(capsys, "op", "phi", "--n", "3", "--in", str(p))[0] == 2


def test_op_on_tensor(capsys, tmp_path):
    g = enumerate_basis("comm", 3, 4).elements[0]
    p = tmp_path / "t.json"
    p.write_text(gio.dumps(gio.to_doc(SymTensor.of(g, g))))
    out = tmp_path / "o.json"
    assert run(capsys, "op", "phi", "--n", "2", "--in", str(p), "--out", str(out))[0] == 0
    assert gio.load(out) == phi_n_extended(SymTensor.of(g, g), 2)


def test_fmt(capsys, tmp_path, k4):
    p = tmp_path / "k4.gcg"
    gio.write_gcg(k4, p)
    code, out, _ = run(capsys, "fmt", "--in", str(p))
    doc = json.loads(out)
    assert code == 0 and doc["encoding"].startswith("C4:") and doc["coefficient"] in (1, -1)


def test_verify_dsquare(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "dsquare", "--max-loops", "3")
    assert code == 0 and out.startswith("PASS dsquare")


@pytest.mark.skipif(shutil.which("graphcx") is None, reason="console script not installed")
def test_console_script():
    r = subprocess.run(["graphcx", "homology", "--operad", "comm", "--loops", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["loops"] == 2
