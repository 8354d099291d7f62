"""Boundary matrices per (operad, loop number, vertex count) and rational
homology ranks by exact elimination."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .complex import _boundary_of
from .enumeration import basis_range, enumerate_basis
from .graph import Operad

CONVENTIONS = {
    "coefficients": "rationals",
    "degree_parity": "vertex count mod 2",
    "orientation": "vertex order and edge directions modulo the even action",
    "boundary": "sum of signed edge contractions, merged vertex first",
    "phi_normalization": "1/2 times the sum over ordered directed-edge tuples",
    "mu_normalization": "1/(2n) times the sum over ordered directed-edge tuples",
    "theta_normalization": "1/2 times the sum over ordered directed-edge tuples",
    "grading": "loop number n, vertex count V in 1..2n-2",
}


@dataclass(frozen=True)
class BoundaryMatrix:
    """Sparse integer matrix of the boundary from the ``V`` slice to the
    ``V - 1`` slice.  ``columns[j]`` maps row index to entry."""

    operad: Operad
    loops: int
    nv: int
    n_rows: int
    n_cols: int
    columns: tuple[dict[int, int], ...]

    def entry(self, i: int, j: int) -> int:
        return self.columns[j].get(i, 0)

    def dense(self) -> list[list[int]]:
        rows = [[0] * self.n_cols for _ in range(self.n_rows)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                rows[i][j] = x
        return rows

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)


def _slice(operad: Operad, n: int, nv: int):
    if nv < 1 or nv > max(2 * n - 2, 1):
        return ()
    return enumerate_basis(operad, n, nv).elements


@lru_cache(maxsize=None)
def boundary_matrix(operad, n: int, nv: int) -> BoundaryMatrix:
    operad = Operad.parse(operad)
    cols_basis = _slice(operad, n, nv)
    rows_basis = _slice(operad, n, nv - 1)
    index = {g: i for i, g in enumerate(rows_basis)}
    columns = []
    for g in cols_basis:
        col = {}
        for h, c in _boundary_of(g).items():
            if h not in index:
                raise ValueError(f"boundary term {h.encoding} missing from slice V={nv - 1}")
            if c.denominator != 1:
                raise ValueError("non-integral boundary coefficient")
            col[index[h]] = int(c)
        columns.append(col)
    return BoundaryMatrix(operad, n, nv, len(rows_basis), len(cols_basis), tuple(columns))


def rank(m: BoundaryMatrix | list[list[int]]) -> int:
    """Exact rank by sparse fraction-free elimination.

    Columns are reduced one at a time against pivots keyed by their leading
    row; each combination ``p*c - a*r`` is divided by the content of the
    result, so entries stay small integers.
    """
    if isinstance(m, BoundaryMatrix):
        cols = [dict(c) for c in m.columns]
    else:
        cols = _columns_of(m)
    pivots: dict[int, dict[int, int]] = {}
    for col in cols:
        col = {i: x for i, x in col.items() if x}
        while col:
            lead = min(col)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = _primitive(col)
                break
            p, a = piv[lead], col[lead]
            new = {}
            for i in set(col) | set(piv):
                x = p * col.get(i, 0) - a * piv.get(i, 0)
                if x:
                    new[i] = x
            col = _primitive(new)
    return len(pivots)


def _columns_of(rows: list[list[int]]) -> list[dict[int, int]]:
    if not rows:
        return []
    return [{i: r[j] for i, r in enumerate(rows) if r[j]} for j in range(len(rows[0]))]


def _primitive(col: dict[int, int]) -> dict[int, int]:
    from math import gcd

    g = 0
    for x in col.values():
        g = gcd(g, x)
        if g == 1:
            return col
    if g > 1:
        return {i: x // g for i, x in col.items()}
    return col


def dense_rank(rows: list[list]) -> int:
    """Textbook Gaussian elimination over the rationals; the oracle for
    :func:`rank`."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    nr, nc = len(a), len(a[0])
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, nr):
            if a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == nr:
            break
    return r


@dataclass(frozen=True)
class HomologyRow:
    nv: int
    dim: int
    rank_boundary: int
    betti: int


@dataclass(frozen=True)
class HomologyTable:
    operad: Operad
    loops: int
    rows: tuple[HomologyRow, ...]
    conventions: dict = field(default_factory=lambda: dict(CONVENTIONS), compare=False)

    def euler_chain(self) -> int:
        return sum((-1) ** r.nv * r.dim for r in self.rows)

    def euler_homology(self) -> int:
        return sum((-1) ** r.nv * r.betti for r in self.rows)

    def euler_holds(self) -> bool:
        return self.euler_chain() == self.euler_homology()

    def to_dict(self) -> dict:
        return {
            "operad": self.operad.value,
            "loops": self.loops,
            "manifest": self.conventions,
            "rows": [
                {"vertices": r.nv, "dim": r.dim, "rank_boundary": r.rank_boundary, "betti": r.betti}
                for r in self.rows
            ],
            "euler_characteristic": self.euler_chain(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        for k in sorted(self.conventions):
            buf.write(f"# {k}: {self.conventions[k]}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["operad", "loops", "vertices", "dim", "rank_boundary", "betti"])
        for r in self.rows:
            w.writerow([self.operad.value, self.loops, r.nv, r.dim, r.rank_boundary, r.betti])
        return buf.getvalue()


MAX_LOOPS = {Operad.COMM: 6, Operad.ASSOC: 4}


def homology_table(operad, n: int, dense_check: bool = False) -> HomologyTable:
    """Betti numbers of the connected complex with loop number ``n``,
    ``H_V = dim C_V - rank d_V - rank d_{V+1}``.

    With ``dense_check`` every rank is recomputed by :func:`dense_rank` and a
    mismatch raises.
    """
    operad = Operad.parse(operad)
    if n < 1:
        raise ValueError("loop number must be at least 1")
    if n > MAX_LOOPS[operad]:
        raise ValueError(f"loop number {n} exceeds the configured bound {MAX_LOOPS[operad]}")
    vs = list(basis_range(n))
    dims = {v: len(_slice(operad, n, v)) for v in vs}
    ranks = {}
    for v in vs + [vs[-1] + 1]:
        m = boundary_matrix(operad, n, v)
        ranks[v] = rank(m)
        if dense_check and ranks[v] != dense_rank(m.dense()):
            raise ArithmeticError(f"sparse and dense ranks disagree at V={v}")
    rows = tuple(HomologyRow(v, dims[v], ranks[v], dims[v] - ranks[v] - ranks[v + 1]) for v in vs)
    return HomologyTable(operad, n, rows)
