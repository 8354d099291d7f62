"""End-to-end acceptance criteria, one test per criterion.

Each test records a line ``criterion N PASS|FAIL ...`` with its runtime and
budget; ``conftest.py`` prints the collected lines at the end of the pytest
run, and running this file as a script prints them directly.  A criterion
fails when its check fails or when it overruns its time budget.
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import pytest

from graphcx import homology_table
from graphcx.verify import (suite_adjoint, suite_canonical, suite_corollaries, suite_dsquare,
                            suite_homotopy, suite_phi1, suite_theorem1, suite_theorem2,
                            suite_theorem3)

DATA = Path(__file__).parent / "data"
RESULTS: dict[int, str] = {}


def record(number: int, title: str, ok: bool, started: float, budget_s: float, detail: str = "") -> bool:
    elapsed = time.perf_counter() - started
    in_time = elapsed < budget_s
    passed = ok and in_time
    state = "PASS" if passed else "FAIL"
    note = f"{detail}; " if detail else ""
    timing = f"{elapsed:.1f}s of {budget_s:.0f}s" + ("" if in_time else " OVER BUDGET")
    RESULTS[number] = f"criterion {number:2d} {state}  {title}: {note}{timing}"
    return passed


def verdict_detail(v) -> str:
    return f"{v.checked} checked, {v.nontrivial} nontrivial"


def test_criterion_01_boundary_squares_to_zero():
    t = time.perf_counter()
    # Comm up to four loops; Assoc is covered up to four as well (superset of three)
    v = suite_dsquare(max_loops=4)
    assert record(1, "d^2 = 0 on every basis graph", v.passed, t, 120, verdict_detail(v)), v.witness


def test_criterion_02_canonical_form_matches_oracle():
    t = time.perf_counter()
    v = suite_canonical(max_loops=4, trials=3, max_vertices=4)
    assert record(2, "canonical form equals brute-force oracle, V <= 4", v.passed, t, 600,
                  f"{v.checked} graphs"), v.witness


def test_criterion_03_phi1_theta1_boundary():
    t = time.perf_counter()
    v = suite_phi1(max_loops=3)
    assert record(3, "phi_1 = theta_1 = boundary", v.passed, t, 60, verdict_detail(v)), v.witness


def test_criterion_04_theorem1():
    t = time.perf_counter()
    v = suite_theorem1(trials=100, seed=0, max_loops=3)
    assert record(4, "phi_i phi_j + phi_j phi_i = 0, i, j <= 3", v.passed and v.checked >= 100, t, 900,
                  verdict_detail(v)), v.witness


def test_criterion_05_theorem2():
    t = time.perf_counter()
    v = suite_theorem2(trials=100, seed=0)
    assert record(5, "theta_i theta_j + theta_j theta_i = 0, i, j <= 3", v.passed and v.checked >= 100,
                  t, 900, verdict_detail(v)), v.witness


def test_criterion_06_theorem3():
    t = time.perf_counter()
    v = suite_theorem3(trials=100, seed=7)
    ce = v.notes.get("reducible_counterexample")
    detail = verdict_detail(v)
    if ce:
        detail += f"; reducible witness X={ce['X']} Y={ce['Y']} ({ce['terms']} terms)"
    assert record(6, "three-term identity on irreducible pairs", v.passed and ce is not None, t, 600,
                  detail), v.witness


def test_criterion_07_homotopy():
    t = time.perf_counter()
    v = suite_homotopy(trials=20, seed=0)
    assert record(7, "phi_n = d mu_n - mu_n d, n = 2, 3; cycles", v.passed, t, 600,
                  f"{verdict_detail(v)}, {v.notes.get('cycle_pairs', 0)} cycle pairs"), v.witness


def test_criterion_08_adjointness():
    t = time.perf_counter()
    v = suite_adjoint(max_loops=3)
    assert record(8, "<dG, H> = <G, dH> on basis pairs", v.passed, t, 300, verdict_detail(v)), v.witness


HOMOLOGY_CASES = [("comm", 2), ("comm", 3), ("assoc", 2)]


def _fresh_table(op: str, n: int):
    from graphcx.canon import canonicalize
    from graphcx.complex import _boundary_of
    from graphcx.enumeration import enumerate_basis
    from graphcx.homology import boundary_matrix

    for f in (boundary_matrix, enumerate_basis, canonicalize, _boundary_of):
        f.cache_clear()
    return homology_table(op, n, dense_check=True)


def test_criterion_09_homology_tables():
    t = time.perf_counter()
    ok = True
    notes = []
    for op, n in HOMOLOGY_CASES:
        first, second = _fresh_table(op, n), _fresh_table(op, n)
        stable = first.to_json() == second.to_json() and first.to_csv() == second.to_csv()
        golden = (DATA / f"homology_{op}_{n}.json").read_text()
        matches = first.to_json() == golden
        ok &= first.euler_holds() and stable and matches
        notes.append(f"{op} n={n} betti={[r.betti for r in first.rows]}")
    assert record(9, "homology tables: Euler, dense oracle, byte-stable", ok, t, 600, "; ".join(notes))


def test_criterion_10_corollaries():
    t = time.perf_counter()
    v = suite_corollaries(trials=12, seed=0)
    assert record(10, "phi_I^2 = 0 and theta_I^2 = 0", v.passed, t, 600, verdict_detail(v)), v.witness


def main() -> int:
    rc = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    for k in sorted(RESULTS):
        print(RESULTS[k])
    return int(rc)


if __name__ == "__main__":
    sys.exit(main())
