"""Chains, the edge-contraction boundary, edge-insertion coboundary, the
disjoint-union product and the |Aut|-weighted inner product."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .canon import CanonicalGraph, aut_order, canonicalize
from .graph import Operad, OrientedGraph, bridges


class Chain:
    """Sparse exact-rational combination of canonical graphs."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[CanonicalGraph, Fraction] = {}
        if terms:
            for g, c in (terms.items() if isinstance(terms, dict) else terms):
                _accumulate(self.terms, g, c)

    @classmethod
    def from_graph(cls, og: OrientedGraph, coeff=1) -> "Chain":
        cg, c = canonicalize(og)
        out = cls()
        if c:
            out.terms[cg] = Fraction(coeff * c)
        return out

    @classmethod
    def basis(cls, cg: CanonicalGraph, coeff=1) -> "Chain":
        out = cls()
        if not cg.zero and coeff:
            out.terms[cg] = Fraction(coeff)
        return out

    def __iter__(self) -> Iterator[CanonicalGraph]:
        return iter(self.terms)

    def items(self):
        return self.terms.items()

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __getitem__(self, g: CanonicalGraph) -> Fraction:
        return self.terms.get(g, Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, Chain) and self.terms == other.terms

    def __add__(self, other: "Chain") -> "Chain":
        out = Chain()
        out.terms = dict(self.terms)
        for g, c in other.terms.items():
            _accumulate(out.terms, g, c)
        return out

    def __neg__(self) -> "Chain":
        out = Chain()
        out.terms = {g: -c for g, c in self.terms.items()}
        return out

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __rmul__(self, scalar) -> "Chain":
        out = Chain()
        if scalar:
            out.terms = {g: scalar * c for g, c in self.terms.items()}
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "Chain(0)"
        body = " + ".join(f"{c}*[{g.encoding}]" for g, c in sorted(self.terms.items()))
        return f"Chain({body})"

    def sorted_items(self) -> list[tuple[CanonicalGraph, Fraction]]:
        return sorted(self.terms.items())


def _accumulate(terms: dict, g, c) -> None:
    if not c:
        return
    v = terms.get(g, 0) + c
    if v:
        terms[g] = v
    else:
        del terms[g]


# --- contraction ----------------------------------------------------------------

def contract_raw(og: OrientedGraph, k: int) -> tuple[OrientedGraph | None, int]:
    """Contract edge ``k`` without canonicalizing.

    The tail takes position 1 and the head position 2 (an odd or even
    reordering), the merged vertex becomes the first vertex and the others
    keep their relative order.  Loops give ``(None, 0)``.
    """
    if not 0 <= k < og.ne:
        raise ValueError(f"edge {k} not in graph")
    a, b = og.edge(k)
    if a == b:
        return None, 0
    ib = b if b > a else b + 1
    sign = -1 if (a + ib - 1) & 1 else 1
    pos = [0] * og.nv
    i = 1
    for v in range(og.nv):
        if v != a and v != b:
            pos[v] = i
            i += 1
    t, h = 2 * k, 2 * k + 1
    ends = tuple(pos[og.ends[x]] for x in range(len(og.ends)) if x != t and x != h)
    rot = None
    if og.rot is not None:
        def m(x):
            return x if x < t else x - 2
        ra, rb = og.rot[a], og.rot[b]
        ia, ib2 = ra.index(t), rb.index(h)
        merged = tuple(m(x) for x in ra[ia + 1:] + ra[:ia] + rb[ib2 + 1:] + rb[:ib2])
        new = [merged] + [None] * (og.nv - 2)
        for v in range(og.nv):
            if v != a and v != b:
                new[pos[v]] = tuple(m(x) for x in og.rot[v])
        rot = tuple(new)
    return OrientedGraph(og.operad, og.nv - 1, ends, rot), sign


def contract_edge(og: OrientedGraph, k: int) -> Chain:
    g, sign = contract_raw(og, k)
    if g is None:
        return Chain()
    return Chain.from_graph(g, sign)


@lru_cache(maxsize=200_000)
def _boundary_of(cg: CanonicalGraph) -> Chain:
    out: dict = {}
    og = cg.graph
    for k in range(og.ne):
        g, sign = contract_raw(og, k)
        if g is None:
            continue
        h, c = canonicalize(g)
        if c:
            _accumulate(out, h, sign * c)
    ch = Chain()
    ch.terms = out
    return ch


def boundary(c: Chain) -> Chain:
    """Sum of all single-edge contractions, extended linearly."""
    out: dict = {}
    for g, coeff in c.items():
        for h, d in _boundary_of(g).items():
            _accumulate(out, h, coeff * d)
    ch = Chain()
    ch.terms = out
    return ch


# --- edge insertion ----------------------------------------------------------------

def vertex_splits(og: OrientedGraph, v: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Unordered splits of the half-edges at ``v`` into two parts of size at
    least two (contiguous cyclic arcs for ribbon graphs)."""
    hs = og.half_edges_at()[v]
    d = len(hs)
    if d < 4:
        return
    if og.rot is not None:
        for i, j in combinations(range(d), 2):
            if j - i >= 2 and d - (j - i) >= 2:
                yield tuple(hs[i:j]), tuple(hs[j:] + hs[:i])
        return
    first, rest = hs[0], hs[1:]
    for size in range(1, d - 2):
        for extra in combinations(rest, size):
            part = (first,) + extra
            other = tuple(x for x in rest if x not in extra)
            if len(other) >= 2:
                yield part, other


def insert_edge(og: OrientedGraph, v: int, part: tuple[int, ...], other: tuple[int, ...]) -> tuple[OrientedGraph, int]:
    """Replace ``v`` by an edge ``a -> b`` carrying ``part`` at ``a`` and
    ``other`` at ``b``; the sign makes contracting the new edge return
    ``og`` with coefficient +1."""
    nh = len(og.ends)
    pos = [0] * og.nv
    i = 2
    for u in range(og.nv):
        if u != v:
            pos[u] = i
            i += 1
    in_part = set(part)
    ends = []
    for x, u in enumerate(og.ends):
        if u == v:
            ends.append(0 if x in in_part else 1)
        else:
            ends.append(pos[u])
    ends += [0, 1]
    rot = None
    if og.rot is not None:
        new = [(nh,) + tuple(part), (nh + 1,) + tuple(other)] + [None] * (og.nv - 1)
        for u in range(og.nv):
            if u != v:
                new[pos[u]] = og.rot[u]
        rot = tuple(new)
    sign = -1 if v & 1 else 1
    return OrientedGraph(og.operad, og.nv + 1, tuple(ends), rot), sign


@lru_cache(maxsize=100_000)
def _coboundary_of(cg: CanonicalGraph) -> Chain:
    og = cg.graph
    out: dict = {}
    for v in range(og.nv):
        for part, other in vertex_splits(og, v):
            g, sign = insert_edge(og, v, part, other)
            h, c = canonicalize(g)
            if c:
                _accumulate(out, h, sign * c)
    ch = Chain()
    ch.terms = out
    return ch


def coboundary(c: Chain) -> Chain:
    """Sum over all ways of inserting one edge (vertex expansions)."""
    out: dict = {}
    for g, coeff in c.items():
        if g.operad not in (Operad.COMM, Operad.ASSOC):
            raise ValueError("coboundary is only defined for Comm and Assoc")
        for h, d in _coboundary_of(g).items():
            _accumulate(out, h, coeff * d)
    ch = Chain()
    ch.terms = out
    return ch


# --- product and pairing --------------------------------------------------------------

def product(a: Chain, b: Chain) -> Chain:
    """Disjoint union: vertex order of ``a``'s graph followed by ``b``'s."""
    out: dict = {}
    for g, c in a.items():
        for h, d in b.items():
            if g.operad != h.operad:
                raise ValueError("operad mismatch")
            u, s = canonicalize(g.graph.disjoint_union(h.graph))
            if s:
                _accumulate(out, u, s * c * d)
    ch = Chain()
    ch.terms = out
    return ch


def inner_product(a: Chain, b: Chain) -> Fraction:
    """<G, H> = |Aut(G)| if G = H else 0, extended bilinearly."""
    total = Fraction(0)
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    for g, c in small.items():
        d = large.terms.get(g)
        if d:
            total += c * d * aut_order(g)
    return total


def is_connected(g: CanonicalGraph) -> bool:
    return "|" not in g.encoding


def is_irreducible(g: CanonicalGraph) -> bool:
    return is_connected(g) and not bridges(g.graph)


def subcomplex_filter(c: Chain, which: str) -> Chain:
    """Keep the terms lying in the connected or irreducible subcomplex."""
    if which == "connected":
        keep = is_connected
    elif which == "irreducible":
        keep = is_irreducible
    else:
        raise ValueError(f"unknown subcomplex {which!r}")
    out = Chain()
    out.terms = {g: x for g, x in c.items() if keep(g)}
    return out


def chain_sum(chains: Iterable[Chain]) -> Chain:
    out: dict = {}
    for ch in chains:
        for g, c in ch.items():
            _accumulate(out, g, c)
    res = Chain()
    res.terms = out
    return res
