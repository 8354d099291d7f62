"""Fusion and fission operations on symmetric algebras of graphs.

Fusion works in the symmetric algebra on all graphs: a factor may itself be
disconnected, and a fused graph is kept as one factor.  Fission starts from a
connected graph and returns its connected pieces as separate factors.

Polygon convention: the 2n-gon has glued sides ``s_1 .. s_n`` alternating
with new sides ``t_1 .. t_n``.  Side ``s_i`` runs along the directed edge
``e_i`` from its tail to its head, and ``t_i`` joins ``head(e_i)`` to
``tail(e_{i+1})`` (indices mod n).  After deleting the glued edges, ``t_i``
is the edge re-pairing the head half-edge of ``e_i`` with the tail half-edge
of ``e_{i+1}``, directed (switched) from ``tail(e_{i+1})`` to
``head(e_i)``.  The contracted side is ``t_1``.

Sums run over ordered tuples of directed edges and are halved, so that the
one-slot operations reduce to the boundary.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Callable, Iterable, Sequence

from .canon import CanonicalGraph, automorphism_group, canonicalize, components_of, koszul_sort
from .complex import Chain, _accumulate, boundary, contract_raw
from .graph import OrientedGraph

HALF = Fraction(1, 2)


# --- the symmetric algebra -------------------------------------------------------

def normalize_factors(factors: Sequence[CanonicalGraph]) -> tuple[tuple[CanonicalGraph, ...], int]:
    """Sort factors by encoding with the Koszul sign; sign 0 when an odd
    factor repeats."""
    items, sign = koszul_sort(list(factors), key=lambda g: g.encoding, parity=lambda g: g.parity)
    for a, b in zip(items, items[1:]):
        if a.parity and a.encoding == b.encoding:
            return tuple(items), 0
    return tuple(items), sign


class SymTensor:
    """Sparse combination of sorted multisets of canonical graphs, with
    coefficients normalized by the Koszul sign of the sort."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[tuple[CanonicalGraph, ...], Fraction] = {}
        if terms:
            for fs, c in (terms.items() if isinstance(terms, dict) else terms):
                self.add(fs, c)

    def add(self, factors: Sequence[CanonicalGraph], coeff) -> None:
        """Add ``coeff * f_1 . f_2 ...`` for factors in the given order."""
        if not coeff:
            return
        key, sign = normalize_factors(factors)
        if sign:
            _accumulate(self.terms, key, sign * coeff)

    @classmethod
    def of(cls, *factors: CanonicalGraph, coeff=1) -> "SymTensor":
        out = cls()
        out.add(factors, Fraction(coeff))
        return out

    def items(self):
        return self.terms.items()

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, SymTensor) and self.terms == other.terms

    def __add__(self, other: "SymTensor") -> "SymTensor":
        out = SymTensor()
        out.terms = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(out.terms, k, c)
        return out

    def __neg__(self) -> "SymTensor":
        out = SymTensor()
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other: "SymTensor") -> "SymTensor":
        return self + (-other)

    def __rmul__(self, scalar) -> "SymTensor":
        out = SymTensor()
        if scalar:
            out.terms = {k: scalar * c for k, c in self.terms.items()}
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "SymTensor(0)"
        body = " + ".join(
            f"{c}*[{' . '.join(g.encoding for g in k)}]" for k, c in sorted(self.items(), key=_item_key))
        return f"SymTensor({body})"

    def sorted_items(self):
        return sorted(self.terms.items(), key=_item_key)

    def arities(self) -> set[int]:
        return {len(k) for k in self.terms}


def _item_key(item):
    return tuple(g.encoding for g in item[0])


def sym_product(a: SymTensor, b: SymTensor) -> SymTensor:
    out = SymTensor()
    for ka, ca in a.items():
        for kb, cb in b.items():
            out.add(ka + kb, ca * cb)
    return out


@lru_cache(maxsize=200_000)
def _factors(cg: CanonicalGraph) -> tuple[CanonicalGraph, ...]:
    return tuple(components_of(cg))


def split_components(c: Chain) -> SymTensor:
    """The isomorphism from graphs to the symmetric algebra on connected
    graphs."""
    out = SymTensor()
    for g, coeff in c.items():
        # representatives are block products of their sorted components
        _accumulate(out.terms, _factors(g), coeff)
    return out


def split_graph(og: OrientedGraph) -> tuple[tuple[CanonicalGraph, ...], int]:
    cg, c = canonicalize(og)
    if not c:
        return (), 0
    return _factors(cg), c


def assemble(t: SymTensor) -> Chain:
    """Inverse of :func:`split_components`: multiply factors back together."""
    out: dict = {}
    for key, c in t.items():
        g = key[0].graph
        for f in key[1:]:
            g = g.disjoint_union(f.graph)
        cg, s = canonicalize(g)
        if s:
            _accumulate(out, cg, s * c)
    ch = Chain()
    ch.terms = out
    return ch


def as_tensor(c: Chain) -> SymTensor:
    return split_components(c)


# --- polygon gluing -------------------------------------------------------------------

def glue_raw(og: OrientedGraph, darts: Sequence[tuple[int, bool]], contract: bool) -> tuple[OrientedGraph | None, int]:
    """Glue a polygon along directed edges ``darts`` (``(edge, reversed)``
    pairs with distinct edges).  Returns the new oriented graph and sign, or
    ``(None, 0)`` when the contracted side is a loop."""
    n = len(darts)
    sign = 1
    tails, heads = [], []
    for k, rev in darts:
        if rev:
            sign = -sign
            tails.append(2 * k + 1)
            heads.append(2 * k)
        else:
            tails.append(2 * k)
            heads.append(2 * k + 1)
    glued = {k for k, _ in darts}
    if len(glued) != n:
        raise ValueError("polygon sides must glue to distinct edges")
    hmap = {}
    new_edge = 0
    for k in range(og.ne):
        if k not in glued:
            hmap[2 * k], hmap[2 * k + 1] = 2 * new_edge, 2 * new_edge + 1
            new_edge += 1
    base = new_edge
    for i in range(n):
        # t_i: tail half of e_{i+1} -> head half of e_i
        hmap[tails[(i + 1) % n]] = 2 * (base + i)
        hmap[heads[i]] = 2 * (base + i) + 1
    ends = [0] * len(og.ends)
    for h, v in enumerate(og.ends):
        ends[hmap[h]] = v
    rot = None
    if og.rot is not None:
        rot = tuple(tuple(hmap[h] for h in cyc) for cyc in og.rot)
    g = OrientedGraph(og.operad, og.nv, tuple(ends), rot)
    if not contract:
        return g, sign
    g, s = contract_raw(g, base)
    return g, sign * s


def glue_polygon(graphs: Sequence[OrientedGraph], site: Sequence[tuple[int, int, bool]], contract: bool = True) -> Chain:
    """Glue a polygon onto the product of ``graphs``.

    ``site[i] = (component, edge, reversed)`` gives slot ``i + 1``'s directed
    edge inside ``graphs[component]``.
    """
    if not graphs:
        raise ValueError("no graphs given")
    offsets = [0]
    g = graphs[0]
    for h in graphs[1:]:
        offsets.append(g.ne)
        g = g.disjoint_union(h)
    darts = []
    for comp, k, rev in site:
        if not 0 <= comp < len(graphs) or not 0 <= k < graphs[comp].ne:
            raise ValueError("malformed gluing site")
        darts.append((offsets[comp] + k, bool(rev)))
    out, sign = glue_raw(g, darts, contract)
    if out is None:
        return Chain()
    return Chain.from_graph(out, sign)


# --- fusion ----------------------------------------------------------------------------

def _product_graph(factors: Sequence[CanonicalGraph]) -> tuple[OrientedGraph, list[int]]:
    g = factors[0].graph
    offsets = [0]
    for f in factors[1:]:
        offsets.append(g.ne)
        g = g.disjoint_union(f.graph)
    return g, offsets


@lru_cache(maxsize=100_000)
def dart_orbits(cg: CanonicalGraph) -> tuple[tuple[int, int], ...]:
    """Orbit representatives and sizes of directed edges under Aut(cg).

    A directed edge is named by its tail half-edge (``2k`` for edge ``k`` as
    stored, ``2k + 1`` reversed).  Gluing sums are invariant under the
    automorphisms of a nonzero graph, which all preserve orientation, so
    one gluing per orbit suffices.
    """
    nh = 2 * cg.ne
    parent = list(range(nh))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if not cg.zero:
        for a in automorphism_group(cg.graph)[0]:
            for h, img in enumerate(a.half_map):
                x, y = find(h), find(img)
                if x != y:
                    parent[max(x, y)] = min(x, y)
    sizes: dict[int, int] = {}
    for h in range(nh):
        r = find(h)
        sizes[r] = sizes.get(r, 0) + 1
    return tuple(sorted(sizes.items()))


@lru_cache(maxsize=50_000)
def _fusion(factors: tuple[CanonicalGraph, ...], contract: bool) -> Chain:
    n = len(factors)
    g, offsets = _product_graph(factors)
    out: dict = {}
    for assign in permutations(range(n)):
        ranges = [dart_orbits(factors[j]) for j in assign]
        for choice in product(*ranges):
            darts = [(offsets[j] + d // 2, bool(d & 1)) for j, (d, _) in zip(assign, choice)]
            res, sign = glue_raw(g, darts, contract)
            if res is None:
                continue
            cg, c = canonicalize(res)
            if c:
                weight = 1
                for _, size in choice:
                    weight *= size
                _accumulate(out, cg, sign * c * weight)
    ch = Chain()
    ch.terms = {k: v * HALF for k, v in out.items()}
    return ch


def _check_arity(t: SymTensor, n: int) -> None:
    bad = t.arities() - {n}
    if bad:
        raise ValueError(f"expected a tensor of arity {n}, found arities {sorted(bad)}")


def phi_n(t: SymTensor, n: int) -> Chain:
    """Fusion of ``n`` graphs along a 2n-gon, contracting ``t_1``."""
    _check_arity(t, n)
    out: dict = {}
    for key, c in t.items():
        for g, d in _fusion(key, True).items():
            _accumulate(out, g, c * d)
    ch = Chain()
    ch.terms = out
    return ch


def mu_n(t: SymTensor, n: int) -> Chain:
    """Gluing without the final contraction, scaled by ``1/n`` (each
    polygon's ``n`` rotations yield the same glued graph)."""
    _check_arity(t, n)
    out: dict = {}
    scale = Fraction(1, n)
    for key, c in t.items():
        for g, d in _fusion(key, False).items():
            _accumulate(out, g, c * d * scale)
    ch = Chain()
    ch.terms = out
    return ch


def coderivation(op: Callable[[tuple[CanonicalGraph, ...]], Chain], n: int, t: SymTensor) -> SymTensor:
    """Extend ``op: S^n -> graphs`` to the symmetric algebra as a
    coderivation: sum over size-``n`` sub-multisets ``I`` with the Koszul
    sign of moving ``G_I`` to the front."""
    out = SymTensor()
    for key, c in t.items():
        k = len(key)
        if k < n:
            continue
        for idx in combinations(range(k), n):
            rest = [i for i in range(k) if i not in idx]
            order = list(idx) + rest
            sign = _reorder_sign(key, order)
            if not sign:
                continue
            inner = op(tuple(key[i] for i in idx))
            tail = [key[i] for i in rest]
            for g, d in inner.items():
                out.add([g] + tail, c * sign * d)
    return out


def _reorder_sign(key: Sequence[CanonicalGraph], order: Sequence[int]) -> int:
    """Sign epsilon with ``key_1 ... key_k = epsilon * key_{order_1} ...``."""
    sign = 1
    for a in range(len(order)):
        if not key[order[a]].parity:
            continue
        for b in range(a + 1, len(order)):
            if key[order[b]].parity and order[a] > order[b]:
                sign = -sign
    return sign


def phi_n_extended(t: SymTensor, n: int) -> SymTensor:
    """Coderivation extension; each fused graph stays a single factor."""
    return coderivation(lambda fs: _fusion_key(fs, True), n, t)


def mu_n_extended(t: SymTensor, n: int) -> SymTensor:
    scale = Fraction(1, n)
    return coderivation(lambda fs: scale * _fusion_key(fs, False), n, t)


def _fusion_key(factors: tuple[CanonicalGraph, ...], contract: bool) -> Chain:
    key, sign = normalize_factors(factors)
    if not sign:
        return Chain()
    return sign * _fusion(key, contract)


def phi_I(t: SymTensor, I: Iterable[int]) -> SymTensor:
    out = SymTensor()
    for i in sorted(set(I)):
        out = out + phi_n_extended(t, i)
    return out


# --- fission ----------------------------------------------------------------------------

def partial_i(og: OrientedGraph, i: int) -> Chain:
    """Sum over ordered tuples of ``i`` directed edges on distinct edges of
    gluing a 2i-gon and contracting ``t_1``."""
    if og.n_components() != 1:
        raise ValueError("partial_i expects a connected graph")
    if i < 1:
        raise ValueError("i must be positive")
    out: dict = {}
    for edges in permutations(range(og.ne), i):
        for revs in product((False, True), repeat=i):
            res, sign = glue_raw(og, list(zip(edges, revs)), True)
            if res is None:
                continue
            cg, c = canonicalize(res)
            if c:
                _accumulate(out, cg, sign * c)
    ch = Chain()
    ch.terms = out
    return ch


@lru_cache(maxsize=50_000)
def _theta(cg: CanonicalGraph, i: int) -> SymTensor:
    og = cg.graph
    out = SymTensor()
    # the first directed edge runs over Aut-orbit representatives
    for first, size in dart_orbits(cg):
        k0, r0 = first // 2, bool(first & 1)
        for edges in permutations([k for k in range(og.ne) if k != k0], i - 1):
            for revs in product((False, True), repeat=i - 1):
                darts = [(k0, r0)] + list(zip(edges, revs))
                res, sign = glue_raw(og, darts, True)
                if res is None or res.n_components() != i:
                    continue
                fs, c = split_graph(res)
                if c:
                    _accumulate(out.terms, fs, sign * c * size * HALF)
    return out


def theta_i(g: CanonicalGraph | OrientedGraph, i: int) -> SymTensor:
    """Fission of a connected graph into exactly ``i`` connected pieces."""
    if isinstance(g, OrientedGraph):
        cg, c = canonicalize(g)
        if cg.n_components() != 1:
            raise ValueError("theta_i is defined on connected graphs only")
        return c * _theta(cg, i) if c else SymTensor()
    if g.n_components() != 1:
        raise ValueError("theta_i is defined on connected graphs only")
    return _theta(g, i)


def derivation(op: Callable[[CanonicalGraph], SymTensor], t: SymTensor) -> SymTensor:
    """Extend an odd map on connected graphs to the symmetric algebra by the
    Leibniz rule with Koszul signs."""
    out = SymTensor()
    for key, c in t.items():
        sign = 1
        for j, g in enumerate(key):
            img = op(g)
            if img:
                before, after = list(key[:j]), list(key[j + 1:])
                for fs, d in img.items():
                    out.add(before + list(fs) + after, sign * c * d)
            if g.parity:
                sign = -sign
    return out


def theta_i_extended(t: SymTensor, i: int) -> SymTensor:
    return derivation(lambda g: _theta(g, i), t)


def theta_I(t: SymTensor, I: Iterable[int]) -> SymTensor:
    out = SymTensor()
    for i in sorted(set(I)):
        out = out + theta_i_extended(t, i)
    return out


def _boundary_factor(g: CanonicalGraph) -> SymTensor:
    out = SymTensor()
    for h, c in boundary(Chain.basis(g)).items():
        out.add((h,), c)
    return out


def boundary_extended(t: SymTensor) -> SymTensor:
    """The boundary on the symmetric algebra (a derivation).  The boundary
    of a factor stays one factor; on connected factors this is theta_1."""
    return derivation(_boundary_factor, t)
