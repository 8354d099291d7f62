"""``graphcx`` command line: basis, op, homology, verify, fmt.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io as gio
from .brackets import (SymTensor, boundary_extended, mu_n, mu_n_extended, phi_n,
                       phi_n_extended, theta_i, theta_i_extended)
from .canon import canonicalize
from .complex import Chain, boundary, chain_sum, coboundary
from .enumeration import basis_range, check_slice_range, enumerate_basis
from .graph import Operad
from .homology import homology_table
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphcx", description="Exact graph complexes of Comm and Assoc.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("basis", help="enumerate basis graphs")
    b.add_argument("--operad", required=True, choices=[o.value for o in Operad])
    b.add_argument("--loops", type=int, required=True)
    b.add_argument("--vertices", type=int)
    b.add_argument("--out", type=Path, help="directory for .gcg bundles and manifest.json")

    o = sub.add_parser("op", help="apply an operator to chains or tensors")
    o.add_argument("operator", choices=["boundary", "coboundary", "phi", "theta", "mu"])
    o.add_argument("--n", type=int, default=1)
    o.add_argument("--in", dest="inputs", type=Path, nargs="+", required=True)
    o.add_argument("--out", type=Path)

    h = sub.add_parser("homology", help="homology table for one loop number")
    h.add_argument("--operad", required=True, choices=[o.value for o in Operad])
    h.add_argument("--loops", type=int, required=True)
    h.add_argument("--format", choices=["csv", "json"], default="json")
    h.add_argument("--dense-check", action="store_true", help="recompute ranks by dense elimination")

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", required=True, choices=list(SUITES) + ["all"])
    v.add_argument("--max-loops", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int)

    f = sub.add_parser("fmt", help="canonicalize and pretty-print a .gcg file")
    f.add_argument("--in", dest="input", type=Path, required=True)
    return p


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def cmd_basis(a) -> int:
    operad = Operad.parse(a.operad)
    vs = [a.vertices] if a.vertices is not None else list(basis_range(a.loops))
    for v in vs:
        check_slice_range(a.loops, v)
    slices = {v: enumerate_basis(operad, a.loops, v).elements for v in vs}
    manifest, files = gio.basis_bundle(operad, a.loops, slices)
    if a.out is None:
        sys.stdout.write(gio.dumps(manifest))
        return 0
    a.out.mkdir(parents=True, exist_ok=True)
    for name, doc in files.items():
        (a.out / name).write_text(gio.dumps(doc))
    (a.out / "manifest.json").write_text(gio.dumps(manifest))
    sys.stdout.write(gio.dumps(manifest))
    return 0


def _as_factor_tensor(c: Chain) -> SymTensor:
    t = SymTensor()
    for g, x in c.items():
        t.add((g,), x)
    return t


def _product_tensor(chains: list[Chain]) -> SymTensor:
    from .brackets import sym_product

    t = SymTensor.of()
    for c in chains:
        t = sym_product(t, _as_factor_tensor(c))
    return t


def cmd_op(a) -> int:
    items = [gio.load(p) for p in a.inputs]
    chains = [x for x in items if isinstance(x, Chain)]
    tensors = [x for x in items if isinstance(x, SymTensor)]
    if chains and tensors:
        raise UsageError("mix of chain and tensor inputs")
    if a.n < 1:
        raise UsageError("--n must be positive")
    op, n = a.operator, a.n
    if op in ("boundary", "coboundary"):
        if tensors:
            if op == "coboundary":
                raise UsageError("coboundary takes chains")
            res = boundary_extended(sum(tensors, SymTensor()))
        else:
            c = chain_sum(chains)
            res = boundary(c) if op == "boundary" else coboundary(c)
    elif op in ("phi", "mu"):
        if tensors:
            t = sum(tensors, SymTensor())
            res = phi_n_extended(t, n) if op == "phi" else mu_n_extended(t, n)
        else:
            if len(chains) != n:
                raise UsageError(f"{op} with --n {n} needs {n} chain inputs")
            t = _product_tensor(chains)
            res = phi_n(t, n) if op == "phi" else mu_n(t, n)
    else:
        if tensors:
            res = theta_i_extended(sum(tensors, SymTensor()), n)
        else:
            res = SymTensor()
            for g, x in chain_sum(chains).items():
                if g.n_components() != 1:
                    raise UsageError("theta takes connected graphs")
                res = res + x * theta_i(g, n)
    _emit(gio.dumps(gio.to_doc(res)), a.out)
    return 0


def cmd_homology(a) -> int:
    table = homology_table(a.operad, a.loops, dense_check=a.dense_check)
    sys.stdout.write(table.to_csv() if a.format == "csv" else table.to_json())
    return 0


def cmd_verify(a) -> int:
    names = list(SUITES) if a.suite == "all" else [a.suite]
    ok = True
    for name in names:
        v = run_suite(name, max_loops=a.max_loops, seed=a.seed, trials=a.trials)
        ok &= v.passed
        state = "PASS" if v.passed else "FAIL"
        sys.stdout.write(f"{state} {name}: {v.checked} checked, {v.nontrivial} nontrivial\n")
        sys.stdout.write(json.dumps(v.to_dict(), sort_keys=True) + "\n")
        sys.stdout.flush()
    return 0 if ok else 1


def cmd_fmt(a) -> int:
    og = gio.read_gcg(a.input)
    cg, c = canonicalize(og)
    doc = gio.graph_to_gcg(cg.graph)
    doc["encoding"] = cg.encoding
    doc["coefficient"] = c
    sys.stdout.write(gio.dumps(doc))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {"basis": cmd_basis, "op": cmd_op, "homology": cmd_homology,
               "verify": cmd_verify, "fmt": cmd_fmt}[a.command]
    try:
        return handler(a)
    except (UsageError, ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"graphcx: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
