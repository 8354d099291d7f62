"""Verification suites: exhaustive where the slices are small, seeded
random tensors where the gluing sums grow quickly.

Every suite returns a :class:`Verdict`; its ``witness`` is the first
counterexample, serialized with :mod:`graphcx.io`.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .brackets import (SymTensor, boundary_extended, mu_n, mu_n_extended, phi_I, phi_n,
                       phi_n_extended, sym_product, theta_I, theta_i, theta_i_extended)
from .canon import CanonicalGraph, canonicalize
from .complex import Chain, boundary, coboundary, inner_product, is_irreducible
from .enumeration import (ORACLE_MAX_E, all_classes, basis_range, enumerate_basis,
                          oracle_canonicalize, random_graph, random_relabel)
from .graph import Operad
from .io import chain_to_doc, tensor_to_doc

SUITES = ("dsquare", "canonical", "phi1", "theorem1", "theorem2", "theorem3",
          "homotopy", "adjoint", "corollaries")

# largest Assoc loop number whose slices enumerate in seconds
ASSOC_CAP = 4
# edge budget for random monomials of arity >= 3
MAX_EDGES = 14


@dataclass
class Verdict:
    suite: str
    passed: bool
    checked: int
    nontrivial: int = 0
    witness: dict | None = None
    notes: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {"suite": self.suite, "passed": self.passed, "checked": self.checked,
             "nontrivial": self.nontrivial}
        if self.notes:
            d["notes"] = self.notes
        if self.witness is not None:
            d["witness"] = self.witness
        return d


def threads() -> int:
    try:
        return max(1, int(os.environ.get("GRAPHCX_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn: Callable, items: Sequence) -> list:
    """Order-preserving map, over worker processes when GRAPHCX_THREADS > 1."""
    k = threads()
    if k == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=k) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * k))))


def basis_pool(operad, loops: Sequence[int]) -> list[CanonicalGraph]:
    return [g for n in loops for v in basis_range(n) for g in enumerate_basis(operad, n, v).elements]


def random_tensor(rng: random.Random, pool: Sequence[CanonicalGraph], arities: Sequence[int],
                  terms: int = 2, max_edges: int | None = None) -> SymTensor:
    """A nonzero combination of ``terms`` monomials with small integer
    coefficients; arities drawn from ``arities``.  With ``max_edges``,
    monomials of arity three or more have at most that many edges in total
    (the gluing sums grow like the product of the edge counts)."""
    while True:
        t = SymTensor()
        for _ in range(terms):
            k = rng.choice(list(arities))
            while True:
                fs = [rng.choice(pool) for _ in range(k)]
                if max_edges is None or k < 3 or sum(f.ne for f in fs) <= max_edges:
                    break
            t = t + SymTensor.of(*fs, coeff=rng.choice((-2, -1, 1, 2, 3)))
        if t:
            return t


# --- suites -----------------------------------------------------------------------

def suite_dsquare(max_loops: int = 3) -> Verdict:
    checked = nontrivial = 0
    for operad in Operad:
        cap = max_loops if operad is Operad.COMM else min(max_loops, ASSOC_CAP)
        for g in basis_pool(operad, range(2, cap + 1)):
            d = boundary(Chain.basis(g))
            dd = boundary(d)
            checked += 1
            nontrivial += bool(d)
            if dd:
                return Verdict("dsquare", False, checked, nontrivial,
                               {"input": g.encoding, "residual": chain_to_doc(dd)})
    return Verdict("dsquare", True, checked, nontrivial)


def suite_canonical(max_loops: int = 4, trials: int = 3, seed: int = 0, max_vertices: int = 4) -> Verdict:
    """Every class with ``V <= max_vertices`` (killed classes included), the
    representative plus ``trials`` relabeled copies, against the oracle."""
    rng = random.Random(seed)
    checked = 0
    for operad in Operad:
        for n in range(2, max_loops + 1):
            for v in basis_range(n):
                if v > max_vertices or v + n - 1 > ORACLE_MAX_E:
                    continue
                for cg in all_classes(operad, n, v):
                    for t in range(trials + 1):
                        og, s = (cg.graph, 1) if t == 0 else random_relabel(cg.graph, rng)
                        fast, c = canonicalize(og)
                        enc, oc = oracle_canonicalize(og)
                        checked += 1
                        expected = 0 if cg.zero else s
                        if fast.encoding != enc or c != oc or c != expected:
                            return Verdict("canonical", False, checked, witness={
                                "class": cg.encoding, "fast": [fast.encoding, c], "oracle": [enc, oc]})
    return Verdict("canonical", True, checked)


def suite_phi1(max_loops: int = 3) -> Verdict:
    """phi_1 = theta_1 = boundary on connected basis graphs."""
    checked = nontrivial = 0
    for operad in Operad:
        cap = max_loops if operad is Operad.COMM else min(max_loops, 3)
        for g in basis_pool(operad, range(2, cap + 1)):
            d = boundary(Chain.basis(g))
            p = phi_n(SymTensor.of(g), 1)
            th = theta_i(g, 1)
            as_t = SymTensor()
            for h, c in d.items():
                as_t.add((h,), c)
            checked += 1
            nontrivial += bool(d)
            if p != d or th != as_t:
                return Verdict("phi1", False, checked, nontrivial, {
                    "input": g.encoding, "boundary": chain_to_doc(d), "phi_1": chain_to_doc(p),
                    "theta_1": tensor_to_doc(th)})
    return Verdict("phi1", True, checked, nontrivial)


def _theorem1_trial(args) -> tuple[bool, bool, dict | None]:
    t, pairs = args
    nontrivial = False
    for i, j in pairs:
        a = phi_n_extended(phi_n_extended(t, j), i)
        b = phi_n_extended(phi_n_extended(t, i), j) if i != j else a
        nontrivial |= bool(a)
        r = a + b if i != j else a
        if r:
            return False, nontrivial, {"input": tensor_to_doc(t), "i": i, "j": j,
                                       "residual": tensor_to_doc(r)}
    return True, nontrivial, None


def _theorem1_pools(max_loops: int) -> dict[Operad, list[CanonicalGraph]]:
    return {Operad.COMM: basis_pool(Operad.COMM, range(2, max_loops + 1)),
            Operad.ASSOC: basis_pool(Operad.ASSOC, range(2, min(max_loops, 3) + 1))}


def suite_theorem1(trials: int = 100, seed: int = 0, max_loops: int = 3,
                   orders: Sequence[int] = (1, 2, 3)) -> Verdict:
    """(phi_i phi_j + phi_j phi_i)(t) = 0 for all i <= j in ``orders``."""
    rng = random.Random(seed)
    pools = _theorem1_pools(max_loops)
    pairs = [(i, j) for i in orders for j in orders if i <= j]
    jobs = []
    for k in range(trials):
        operad = Operad.COMM if k % 2 == 0 else Operad.ASSOC
        pool = [g for g in pools[operad] if g.b1() <= max_loops]
        jobs.append((random_tensor(rng, pool, (2, 3, 4), terms=rng.choice((1, 2)),
                                   max_edges=MAX_EDGES), pairs))
    return _collect("theorem1", _pmap(_theorem1_trial, jobs))


def _collect(name: str, results) -> Verdict:
    nontrivial = 0
    for k, (ok, nt, wit) in enumerate(results):
        nontrivial += nt
        if not ok:
            return Verdict(name, False, k + 1, nontrivial, wit)
    return Verdict(name, True, len(results), nontrivial)


def _theorem2_trial(args) -> tuple[bool, bool, dict | None]:
    t, orders = args
    nontrivial = False
    for i in orders:
        for j in orders:
            if j < i:
                continue
            a = theta_i_extended(theta_i_extended(t, j), i)
            b = theta_i_extended(theta_i_extended(t, i), j) if i != j else a
            nontrivial |= bool(a)
            r = a + b if i != j else a
            if r:
                return False, nontrivial, {"input": tensor_to_doc(t), "i": i, "j": j,
                                           "residual": tensor_to_doc(r)}
    return True, nontrivial, None


def theorem2_inputs(trials: int, seed: int) -> list[SymTensor]:
    """Connected inputs: Comm basis graphs with b1 <= 5 in turn, then random
    Assoc graphs with b1 = 4 or 5 (fission into two pieces needs b1 >= 5)."""
    rng = random.Random(seed)
    comm = basis_pool(Operad.COMM, range(2, 6))
    out = []
    for k in range(trials):
        if k % 2 == 0:
            g = comm[(k // 2) % len(comm)]
        else:
            n = rng.choice((4, 5, 5))
            g = random_graph(Operad.ASSOC, n, rng.randint(2, 2 * n - 2), rng)
        out.append(SymTensor.of(g))
    return out


def suite_theorem2(trials: int = 100, seed: int = 0, orders: Sequence[int] = (1, 2, 3)) -> Verdict:
    jobs = [(t, tuple(orders)) for t in theorem2_inputs(trials, seed)]
    return _collect("theorem2", _pmap(_theorem2_trial, jobs))


def theorem3_expression(x: CanonicalGraph, y: CanonicalGraph) -> SymTensor:
    """theta_2 phi_2(X.Y) + phi_2(theta_2(X).Y) + (-1)^V(X) phi_2(X.theta_2(Y))."""
    tx, ty = SymTensor.of(x), SymTensor.of(y)
    a = theta_i_extended(phi_n_extended(SymTensor.of(x, y), 2), 2)
    b = phi_n_extended(sym_product(theta_i_extended(tx, 2), ty), 2)
    c = phi_n_extended(sym_product(tx, theta_i_extended(ty, 2)), 2)
    return a + b + ((-1) ** x.nv) * c


def _theorem3_trial(pair) -> tuple[bool, bool, dict | None]:
    x, y = pair
    r = theorem3_expression(x, y)
    nontrivial = bool(theta_i_extended(phi_n_extended(SymTensor.of(x, y), 2), 2))
    if r:
        return False, nontrivial, {"X": x.encoding, "Y": y.encoding, "residual": tensor_to_doc(r)}
    return True, nontrivial, None


def irreducible_pool(max_loops: int = 3) -> list[CanonicalGraph]:
    pools = _theorem1_pools(max_loops)
    return [g for op in Operad for g in pools[op] if is_irreducible(g)]


def find_reducible_counterexample(max_loops: int = 3) -> dict | None:
    """First pair (X, Y), X reducible, where the three-term expression is
    nonzero."""
    for operad in (Operad.ASSOC, Operad.COMM):
        pool = basis_pool(operad, range(2, max_loops + 1))
        red = [g for g in pool if not is_irreducible(g)]
        for x in red:
            for y in pool:
                r = theorem3_expression(x, y)
                if r:
                    return {"X": x.encoding, "Y": y.encoding, "terms": len(r),
                            "residual": tensor_to_doc(r)}
    return None


def suite_theorem3(trials: int = 100, seed: int = 0, max_loops: int = 3) -> Verdict:
    rng = random.Random(seed)
    pool = irreducible_pool(max_loops)
    by_op = {op: [g for g in pool if g.operad is op] for op in Operad}
    pairs = []
    for k in range(trials):
        cand = by_op[Operad.ASSOC] if k % 4 else by_op[Operad.COMM]
        cand = cand or pool
        pairs.append((rng.choice(cand), rng.choice(cand)))
    v = _collect("theorem3", _pmap(_theorem3_trial, pairs))
    v.notes["reducible_counterexample"] = find_reducible_counterexample()
    if v.notes["reducible_counterexample"] is None:
        v.passed = False
        v.notes["error"] = "no reducible pair violates the identity"
    return v


def _homotopy_trial(args) -> tuple[bool, bool, dict | None]:
    t, n = args
    lhs = phi_n_extended(t, n)
    rhs = boundary_extended(mu_n_extended(t, n)) - mu_n_extended(boundary_extended(t), n)
    if lhs != rhs:
        return False, bool(lhs), {"input": tensor_to_doc(t), "n": n,
                                  "residual": tensor_to_doc(lhs - rhs)}
    return True, bool(lhs), None


def cycles(operad, loops: int) -> list[Chain]:
    """A basis of the boundary kernel in each slice (from exact elimination)."""
    from .homology import boundary_matrix

    out = []
    for v in basis_range(loops):
        m = boundary_matrix(operad, loops, v)
        basis = enumerate_basis(operad, loops, v).elements
        for vec in _kernel(m.dense(), m.n_cols):
            ch = Chain()
            for g, c in zip(basis, vec):
                if c:
                    ch = ch + Chain.basis(g, c)
            if ch:
                out.append(ch)
    return out


def _kernel(rows: list[list[int]], ncols: int) -> list[list[Fraction]]:
    a = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -a[i][f]
        out.append(vec)
    return out


def _chain_tensor(chains: Sequence[Chain]) -> SymTensor:
    t = SymTensor.of()
    for ch in chains:
        u = SymTensor()
        for g, c in ch.items():
            u.add((g,), c)
        t = sym_product(t, u)
    return t


def suite_homotopy(trials: int = 20, seed: int = 0, max_loops: int = 3) -> Verdict:
    """phi_n = d mu_n - mu_n d for n = 2, 3, and phi_2 of two cycles is the
    boundary of mu_2 of them."""
    rng = random.Random(seed)
    pools = _theorem1_pools(max_loops)
    jobs = []
    for k in range(trials):
        op = Operad.COMM if k % 2 == 0 else Operad.ASSOC
        n = 2 if k % 4 < 2 else 3
        # arity-3 gluings grow fast; keep their inputs at b1 <= 2
        pool = [g for g in pools[op] if n == 2 or g.b1() <= 2]
        jobs.append((random_tensor(rng, pool, (n, n + 1), terms=2), n))
    v = _collect("homotopy", _pmap(_homotopy_trial, jobs))
    if not v.passed:
        return v
    zs = [z for op, n in ((Operad.COMM, 2), (Operad.COMM, 3), (Operad.ASSOC, 2)) for z in cycles(op, n)]
    done = 0
    for a in range(len(zs)):
        for b in range(a, len(zs)):
            if next(iter(zs[a])).operad != next(iter(zs[b])).operad:
                continue
            t = _chain_tensor([zs[a], zs[b]])
            lhs = phi_n(t, 2)
            rhs = boundary(mu_n(t, 2))
            done += 1
            if lhs != rhs:
                v.passed = False
                v.witness = {"cycles": [chain_to_doc(zs[a]), chain_to_doc(zs[b])],
                             "residual": chain_to_doc(lhs - rhs)}
                break
        if not v.passed:
            break
    v.notes["cycle_pairs"] = done
    return v


def suite_adjoint(max_loops: int = 3) -> Verdict:
    """<dG, H> = <G, dH> for G in slice V, H in slice V + 1."""
    checked = nontrivial = 0
    for operad in Operad:
        cap = max_loops if operad is Operad.COMM else min(max_loops, 2)
        for n in range(2, cap + 1):
            vs = list(basis_range(n))
            for v in vs[:-1]:
                lo = enumerate_basis(operad, n, v).elements
                hi = enumerate_basis(operad, n, v + 1).elements
                cob = {g: coboundary(Chain.basis(g)) for g in lo}
                bd = {h: boundary(Chain.basis(h)) for h in hi}
                for g in lo:
                    for h in hi:
                        left = inner_product(cob[g], Chain.basis(h))
                        right = inner_product(Chain.basis(g), bd[h])
                        checked += 1
                        nontrivial += bool(left)
                        if left != right:
                            return Verdict("adjoint", False, checked, nontrivial, {
                                "G": g.encoding, "H": h.encoding, "left": str(left), "right": str(right)})
    return Verdict("adjoint", True, checked, nontrivial)


def _corollary_trial(args) -> tuple[bool, bool, dict | None]:
    t, I, which = args
    op = phi_I if which == "phi" else theta_I
    once = op(t, I)
    r = op(once, I)
    if r:
        return False, bool(once), {"input": tensor_to_doc(t), "I": list(I), "operator": which,
                                   "residual": tensor_to_doc(r)}
    return True, bool(once), None


def suite_corollaries(trials: int = 12, seed: int = 0, max_loops: int = 3) -> Verdict:
    rng = random.Random(seed)
    pools = _theorem1_pools(max_loops)
    sets = ((1, 2), (2, 3), (1, 2, 3))
    jobs = []
    for k in range(trials):
        I = sets[k % 3]
        op = Operad.COMM if k % 2 == 0 else Operad.ASSOC
        jobs.append((random_tensor(rng, pools[op], (2, 3), terms=2, max_edges=MAX_EDGES), I, "phi"))
    for k, t in enumerate(theorem2_inputs(trials, seed + 1)):
        jobs.append((t, sets[k % 3], "theta"))
    return _collect("corollaries", _pmap(_corollary_trial, jobs))


def run_suite(name: str, max_loops: int | None = None, seed: int = 0, trials: int | None = None) -> Verdict:
    kw: dict = {}
    if name in ("theorem1", "theorem2", "theorem3", "homotopy", "corollaries", "canonical"):
        kw["seed"] = seed
        if trials is not None:
            kw["trials"] = trials
    if max_loops is not None and name != "theorem2":
        kw["max_loops"] = max_loops
    fn = {
        "dsquare": suite_dsquare, "canonical": suite_canonical, "phi1": suite_phi1,
        "theorem1": suite_theorem1, "theorem2": suite_theorem2, "theorem3": suite_theorem3,
        "homotopy": suite_homotopy, "adjoint": suite_adjoint, "corollaries": suite_corollaries,
    }[name]
    if name == "canonical" and trials is not None:
        kw["trials"] = min(trials, 5)
    return fn(**kw)
