"""Canonical forms, orientation signs and automorphism groups.

A connected graph is canonicalized by choosing, among a family of labelings
closed under isomorphism, the one with the smallest key:

* Comm: a labeling is a vertex order ``v_0, v_1, ...``; column ``j`` of the
  key is ``(deg v_j, -loops(v_j), -mult(v_0, v_j), ..., -mult(v_{j-1}, v_j))``.
  A level-by-level search keeps only the candidates achieving the minimal
  column.
* Assoc: a labeling is generated by a traversal from one start half-edge
  (see :func:`_assoc_leaves`); the key is the degree sequence followed by
  the partner list.

The minimizing labelings (leaves) differ pairwise by automorphisms, and
every automorphism arises this way.  Disconnected graphs are handled
component-wise with the components sorted by encoding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

from .graph import Operad, OrientedGraph, ReindexElement, permutation_parity



@dataclass(frozen=True)
class CanonicalGraph:
    """Isomorphism class with a preferred orientation representative.

    Equality and hashing use ``encoding`` only.
    """
    encoding: str
    graph: OrientedGraph = field(compare=False, repr=False)
    zero: bool = field(default=False, compare=False)

    @property
    def nv(self) -> int:
        return self.graph.nv

    @property
    def ne(self) -> int:
        return self.graph.ne

    @property
    def parity(self) -> int:
        return self.graph.nv & 1

    @property
    def operad(self) -> Operad:
        return self.graph.operad

    def b1(self) -> int:
        return self.graph.b1()

    def n_components(self) -> int:
        return self.encoding.count("|") + 1

    def __lt__(self, other: "CanonicalGraph") -> bool:
        return self.encoding < other.encoding

    def __str__(self) -> str:
        return self.encoding


# --- connected search ---------------------------------------------------------

def _multiplicities(og: OrientedGraph) -> list[list[int]]:
    n = og.nv
    m = [[0] * n for _ in range(n)]
    for a, b in og.edges():
        m[a][b] += 1
        if a != b:
            m[b][a] += 1
    return m


def _comm_leaves(og: OrientedGraph) -> tuple[tuple, list[tuple[int, ...]]]:
    n = og.nv
    mult = _multiplicities(og)
    deg = og.valences()
    # columns packed as integers in base B; comparing them compares the
    # tuples (deg, -loops, -mult, ...) lexicographically
    B = max(max(row) for row in mult) + 2
    base = [deg[v] * B + (B - 1 - mult[v][v]) for v in range(n)]
    nodes: list[tuple[tuple[int, ...], list[int]]] = [((), base)]
    key = []
    for _ in range(n):
        best = None
        nxt = []
        for order, codes in nodes:
            for v in range(n):
                if v in order:
                    continue
                c = codes[v]
                if best is None or c < best:
                    best = c
                    nxt = [(order, codes, v)]
                elif c == best:
                    nxt.append((order, codes, v))
        key.append(best)
        nodes = []
        for order, codes, v in nxt:
            row = mult[v]
            nodes.append((order + (v,), [c * B + (B - 1 - row[u]) for u, c in enumerate(codes)]))
    return tuple(key), [order for order, _ in nodes]


def _assoc_leaves(og: OrientedGraph) -> tuple[tuple, list[tuple[tuple[int, ...], list[int]]]]:
    """Leaves are ``(vertex order, half-edge numbering)`` pairs.

    A start half-edge at a vertex of minimal degree determines a whole
    numbering: the start vertex takes numbers ``0..d-1`` around its cyclic
    order, then half-edges are scanned in numbering order and each one whose
    partner sits at an unnumbered vertex numbers that vertex, beginning at
    the partner.  The key lists, block by block, the degree followed by the
    partner numbers; it is built during the scan, so a start is abandoned
    as soon as its key exceeds the best one.
    """
    rot = og.rot
    ends = og.ends
    nh = len(ends)
    where = [0] * nh
    for cyc in rot:
        for i, h in enumerate(cyc):
            where[h] = i
    mind = min(len(c) for c in rot)
    best: list[int] | None = None
    leaves: list = []
    for v0, cyc0 in enumerate(rot):
        if len(cyc0) != mind:
            continue
        for s0 in range(mind):
            label = [-1] * nh
            dart_at = [cyc0[(s0 + i) % mind] for i in range(mind)]
            for i, h in enumerate(dart_at):
                label[h] = i
            order = [v0]
            block, block_end = 0, mind
            key = [mind]
            # cmp: 0 tied so far, -1 already smaller than best
            cmp = 0 if best is not None else -1
            if cmp == 0 and key[0] != best[0]:
                cmp = -1 if key[0] < best[0] else 1
            x = 0
            while cmp <= 0 and x < nh:
                if x == block_end:
                    block += 1
                    d = len(rot[order[block]])
                    block_end = x + d
                    key.append(d)
                    if cmp == 0 and key[-1] != best[len(key) - 1]:
                        cmp = -1 if key[-1] < best[len(key) - 1] else 1
                        if cmp > 0:
                            break
                p = dart_at[x] ^ 1
                if label[p] < 0:
                    u = ends[p]
                    cyc = rot[u]
                    d = len(cyc)
                    i0 = where[p]
                    off = len(dart_at)
                    for i in range(d):
                        h = cyc[(i0 + i) % d]
                        label[h] = off + i
                        dart_at.append(h)
                    order.append(u)
                key.append(label[p])
                if cmp == 0 and key[-1] != best[len(key) - 1]:
                    cmp = -1 if key[-1] < best[len(key) - 1] else 1
                x += 1
            if cmp > 0:
                continue
            if cmp < 0:
                best = key
                leaves = [(tuple(order), label)]
            else:
                leaves.append((tuple(order), label))
    return tuple(best), leaves


def _comm_rep(og: OrientedGraph, order: tuple[int, ...]) -> tuple[OrientedGraph, int, str]:
    """Representative for a minimizing vertex order, and the sign of ``og``
    relative to it."""
    pos = [0] * og.nv
    for i, v in enumerate(order):
        pos[v] = i
    parity = permutation_parity(pos)
    pairs = []
    for a, b in og.edges():
        pa, pb = pos[a], pos[b]
        if pa > pb:
            parity ^= 1
            pa, pb = pb, pa
        pairs.append((pa, pb))
    pairs.sort()
    ends = tuple(x for p in pairs for x in p)
    rep = OrientedGraph(Operad.COMM, og.nv, ends, None)
    enc = "C" + str(og.nv) + ":" + ",".join(f"{a}-{b}" for a, b in pairs)
    return rep, (-1 if parity else 1), enc


def _assoc_rep(og: OrientedGraph, order: tuple[int, ...], label: list[int]) -> tuple[OrientedGraph, int, str]:
    pos = [0] * og.nv
    for i, v in enumerate(order):
        pos[v] = i
    parity = permutation_parity(pos)
    nh = len(og.ends)
    partner = [0] * nh
    for k in range(og.ne):
        x, y = label[2 * k], label[2 * k + 1]
        if x > y:
            parity ^= 1
        partner[x], partner[y] = y, x
    block = [0] * nh
    degs = [len(og.rot[v]) for v in order]
    off = 0
    for b, d in enumerate(degs):
        for i in range(off, off + d):
            block[i] = b
        off += d
    hid = [0] * nh
    k = 0
    for x in range(nh):
        if partner[x] > x:
            hid[x], hid[partner[x]] = 2 * k, 2 * k + 1
            k += 1
    ends = [0] * nh
    for x in range(nh):
        ends[hid[x]] = block[x]
    rot = []
    off = 0
    for d in degs:
        rot.append(tuple(hid[x] for x in range(off, off + d)))
        off += d
    rep = OrientedGraph(Operad.ASSOC, og.nv, tuple(ends), tuple(rot))
    enc = "A" + ".".join(map(str, degs)) + ":" + ",".join(map(str, partner))
    return rep, (-1 if parity else 1), enc


def _canon_connected(og: OrientedGraph) -> tuple[CanonicalGraph, int, int]:
    """(canonical graph, coeff, number of minimizing labelings)."""
    if og.operad is Operad.COMM:
        _, leaves = _comm_leaves(og)
        rep, sign, enc = _comm_rep(og, leaves[0])
        zero = any(og.is_loop(k) for k in range(og.ne))
        if not zero:
            for leaf in leaves[1:]:
                if _comm_rep(og, leaf)[1] != sign:
                    zero = True
                    break
    else:
        _, leaves = _assoc_leaves(og)
        rep, sign, enc = _assoc_rep(og, *leaves[0])
        zero = False
        for leaf in leaves[1:]:
            if _assoc_rep(og, *leaf)[1] != sign:
                zero = True
                break
    return CanonicalGraph(enc, rep, zero), (0 if zero else sign), len(leaves)


# --- public API -----------------------------------------------------------------

def koszul_sort(items: list, key, parity) -> tuple[list, int]:
    """Stable sort of graded items, returning the Koszul sign of the
    reordering (each swap of two odd items contributes -1)."""
    idx = sorted(range(len(items)), key=lambda i: key(items[i]))
    sign = 1
    par = [parity(items[i]) for i in idx]
    for a in range(len(idx)):
        if not par[a]:
            continue
        for b in range(a + 1, len(idx)):
            if par[b] and idx[a] > idx[b]:
                sign = -sign
    return [items[i] for i in idx], sign


def block_permutation_sign(blocks: list[list[int]], nv: int) -> int:
    """Sign of reordering vertices so that ``blocks`` are consecutive."""
    pos = [0] * nv
    i = 0
    for blk in blocks:
        for v in blk:
            pos[v] = i
            i += 1
    return -1 if permutation_parity(pos) else 1


@lru_cache(maxsize=400_000)
def canonicalize(og: OrientedGraph) -> tuple[CanonicalGraph, int]:
    """Canonical class of ``og`` and the coefficient ``c`` with
    ``og = c * representative`` (``c = 0`` when the class is killed by an
    orientation-reversing automorphism)."""
    comps = og.components()
    if len(comps) == 1:
        cg, coeff, _ = _canon_connected(og)
        return cg, coeff
    sign = block_permutation_sign(comps, og.nv)
    parts = []
    for comp in comps:
        cg, c = canonicalize(og.subgraph(comp))
        parts.append(cg)
        sign *= c
    parts, s = koszul_sort(parts, key=lambda g: g.encoding, parity=lambda g: g.parity)
    sign *= s
    zero = sign == 0 or any(
        a.encoding == b.encoding and a.parity for a, b in zip(parts, parts[1:]))
    rep = parts[0].graph
    for p in parts[1:]:
        rep = rep.disjoint_union(p.graph)
    cg = CanonicalGraph("|".join(p.encoding for p in parts), rep, zero)
    return cg, (0 if zero else sign)


def components_of(cg: CanonicalGraph) -> list[CanonicalGraph]:
    """Connected canonical factors of a canonical representative, in block
    order (the representative is their product with coefficient +1)."""
    if "|" not in cg.encoding:
        return [cg]
    out = []
    for comp in cg.graph.components():
        part, c = canonicalize(cg.graph.subgraph(comp))
        out.append(part)
    return out


# --- automorphisms ------------------------------------------------------------

@dataclass(frozen=True)
class Automorphism:
    vertex_map: tuple[int, ...]
    half_map: tuple[int, ...]

    def reindex(self) -> ReindexElement:
        flipped = frozenset(k for k in range(len(self.half_map) // 2) if self.half_map[2 * k] & 1)
        return ReindexElement(self.vertex_map, flipped)

    @property
    def sign(self) -> int:
        return self.reindex().sign


def is_automorphism(og: OrientedGraph, vmap, hmap) -> bool:
    """Check that a vertex/half-edge bijection preserves incidence, pairing
    and (for ribbon graphs) the cyclic orders."""
    if sorted(vmap) != list(range(og.nv)) or sorted(hmap) != list(range(len(og.ends))):
        return False
    for h, v in enumerate(og.ends):
        if og.ends[hmap[h]] != vmap[v]:
            return False
        if hmap[h ^ 1] != hmap[h] ^ 1:
            return False
    if og.rot is not None:
        for v, cyc in enumerate(og.rot):
            img = [hmap[h] for h in cyc]
            target = og.rot[vmap[v]]
            if len(img) != len(target):
                return False
            s = target.index(img[0])
            if any(target[(s + i) % len(target)] != img[i] for i in range(len(img))):
                return False
    return True


def _comm_lift(og: OrientedGraph, vmap) -> tuple[int, ...]:
    """Lift a vertex automorphism to half-edges, matching parallel edges and
    loops in index order."""
    buckets: dict[tuple[int, int], list[int]] = {}
    for k, (a, b) in enumerate(og.edges()):
        buckets.setdefault((min(a, b), max(a, b)), []).append(k)
    hmap = [0] * len(og.ends)
    for (a, b), ks in buckets.items():
        ta, tb = vmap[a], vmap[b]
        targets = buckets[(min(ta, tb), max(ta, tb))]
        for k, t in zip(ks, targets):
            tt, th = og.edge(t)
            if a == b or (vmap[og.ends[2 * k]] == tt):
                hmap[2 * k], hmap[2 * k + 1] = 2 * t, 2 * t + 1
            else:
                hmap[2 * k], hmap[2 * k + 1] = 2 * t + 1, 2 * t
    return tuple(hmap)


def _connected_automorphisms(og: OrientedGraph) -> tuple[list[Automorphism], int]:
    nh = len(og.ends)
    gens: list[Automorphism] = []
    if og.operad is Operad.COMM:
        _, leaves = _comm_leaves(og)
        base = leaves[0]
        for leaf in leaves[1:]:
            vmap = [0] * og.nv
            for u, w in zip(base, leaf):
                vmap[u] = w
            gens.append(Automorphism(tuple(vmap), _comm_lift(og, vmap)))
        ident = tuple(range(og.nv))
        buckets: dict[tuple[int, int], list[int]] = {}
        for k, (a, b) in enumerate(og.edges()):
            buckets.setdefault((min(a, b), max(a, b)), []).append(k)
        order = len(leaves)
        for (a, b), ks in buckets.items():
            order *= factorial(len(ks))
            if a == b:
                order *= 2 ** len(ks)
                for k in ks:
                    h = list(range(nh))
                    h[2 * k], h[2 * k + 1] = 2 * k + 1, 2 * k
                    gens.append(Automorphism(ident, tuple(h)))
            for k1, k2 in zip(ks, ks[1:]):
                h = list(range(nh))
                tail_first = og.ends[2 * k1] == og.ends[2 * k2]
                h[2 * k1], h[2 * k2] = (2 * k2, 2 * k1) if tail_first else (2 * k2 + 1, 2 * k1 + 1)
                h[2 * k1 + 1], h[2 * k2 + 1] = (2 * k2 + 1, 2 * k1 + 1) if tail_first else (2 * k2, 2 * k1)
                gens.append(Automorphism(ident, tuple(h)))
        return gens, order
    _, leaves = _assoc_leaves(og)
    base_order, base_label = leaves[0]
    inv = [0] * nh
    for h, x in enumerate(base_label):
        inv[x] = h
    for order, label in leaves[1:]:
        # maps the half-edge numbered x by the base labeling to the one numbered x by this labeling
        lab_inv = [0] * nh
        for h, x in enumerate(label):
            lab_inv[x] = h
        hmap = tuple(lab_inv[base_label[h]] for h in range(nh))
        vmap = [0] * og.nv
        for u, w in zip(base_order, order):
            vmap[u] = w
        gens.append(Automorphism(tuple(vmap), hmap))
    return gens, len(leaves)


def automorphism_group(og: OrientedGraph) -> tuple[list[Automorphism], int]:
    """Generators and exact order of the decoration-preserving automorphism
    group (orientation-reversing automorphisms included)."""
    comps = og.components()
    if len(comps) == 1:
        return _connected_automorphisms(og)
    gens: list[Automorphism] = []
    order = 1
    canon = []
    half_lists = []
    for comp in comps:
        sub = og.subgraph(comp)
        cg, _ = canonicalize(sub)
        canon.append(cg.encoding)
        hl = [h for h in range(len(og.ends)) if og.ends[h] in set(comp)]
        half_lists.append(hl)
        sub_gens, sub_order = _connected_automorphisms(sub)
        order *= sub_order
        for a in sub_gens:
            vmap = list(range(og.nv))
            hmap = list(range(len(og.ends)))
            for i, v in enumerate(comp):
                vmap[v] = comp[a.vertex_map[i]]
            for i, h in enumerate(hl):
                hmap[h] = hl[a.half_map[i]]
            gens.append(Automorphism(tuple(vmap), tuple(hmap)))
    classes: dict[str, list[int]] = {}
    for i, enc in enumerate(canon):
        classes.setdefault(enc, []).append(i)
    for members in classes.values():
        order *= factorial(len(members))
        for i, j in zip(members, members[1:]):
            iso = find_isomorphism(og.subgraph(comps[i]), og.subgraph(comps[j]))
            vmap = list(range(og.nv))
            hmap = list(range(len(og.ends)))
            hl_i, hl_j = half_lists[i], half_lists[j]
            for x, v in enumerate(comps[i]):
                vmap[v] = comps[j][iso.vertex_map[x]]
                vmap[comps[j][iso.vertex_map[x]]] = v
            for x, h in enumerate(hl_i):
                hmap[h] = hl_j[iso.half_map[x]]
                hmap[hl_j[iso.half_map[x]]] = h
            gens.append(Automorphism(tuple(vmap), tuple(hmap)))
    return gens, order


def find_isomorphism(a: OrientedGraph, b: OrientedGraph) -> Automorphism:
    """An isomorphism ``a -> b`` of connected graphs (raises if none)."""
    ca, _ = canonicalize(a)
    cb, _ = canonicalize(b)
    if ca.encoding != cb.encoding:
        raise ValueError("graphs are not isomorphic")
    # both map onto the same representative via their first leaf
    la = _leaf_to_rep(a)
    lb = _leaf_to_rep(b)
    vinv = [0] * b.nv
    for v, w in enumerate(lb[0]):
        vinv[w] = v
    hinv = [0] * len(b.ends)
    for h, x in enumerate(lb[1]):
        hinv[x] = h
    return Automorphism(tuple(vinv[la[0][v]] for v in range(a.nv)),
                        tuple(hinv[la[1][h]] for h in range(len(a.ends))))


def _leaf_to_rep(og: OrientedGraph) -> tuple[list[int], list[int]]:
    """Vertex and half-edge maps from ``og`` onto its representative."""
    if og.operad is Operad.COMM:
        _, leaves = _comm_leaves(og)
        order = leaves[0]
        rep, _, _ = _comm_rep(og, order)
        pos = [0] * og.nv
        for i, v in enumerate(order):
            pos[v] = i
        used = set()
        hmap = [0] * len(og.ends)
        for k, (a, b) in enumerate(og.edges()):
            for t in range(rep.ne):
                if t in used:
                    continue
                ra, rb = rep.edge(t)
                if (ra, rb) == (pos[a], pos[b]):
                    hmap[2 * k], hmap[2 * k + 1] = 2 * t, 2 * t + 1
                elif (ra, rb) == (pos[b], pos[a]):
                    hmap[2 * k], hmap[2 * k + 1] = 2 * t + 1, 2 * t
                else:
                    continue
                used.add(t)
                break
        return pos, hmap
    _, leaves = _assoc_leaves(og)
    order, label = leaves[0]
    rep, _, _ = _assoc_rep(og, order, label)
    pos = [0] * og.nv
    for i, v in enumerate(order):
        pos[v] = i
    # representative half-edge ids are ordered by label within each edge
    nh = len(og.ends)
    partner = [0] * nh
    for k in range(og.ne):
        x, y = label[2 * k], label[2 * k + 1]
        partner[x], partner[y] = y, x
    hid = [0] * nh
    k = 0
    for x in range(nh):
        if partner[x] > x:
            hid[x], hid[partner[x]] = 2 * k, 2 * k + 1
            k += 1
    return pos, [hid[label[h]] for h in range(nh)]


@lru_cache(maxsize=100_000)
def aut_order(cg: CanonicalGraph) -> int:
    return automorphism_group(cg.graph)[1]


def _decode_connected(enc: str) -> OrientedGraph:
    head, _, body = enc.partition(":")
    if head.startswith("C"):
        nv = int(head[1:])
        ends = []
        for pair in filter(None, body.split(",")):
            a, b = pair.split("-")
            ends += [int(a), int(b)]
        return OrientedGraph(Operad.COMM, nv, tuple(ends), None)
    if head.startswith("A"):
        degs = [int(d) for d in head[1:].split(".")]
        partner = [int(x) for x in body.split(",")]
        nh = len(partner)
        if sum(degs) != nh or any(partner[partner[x]] != x or partner[x] == x for x in range(nh)):
            raise ValueError(f"malformed ribbon encoding {enc!r}")
        block = [b for b, d in enumerate(degs) for _ in range(d)]
        hid = [0] * nh
        k = 0
        for x in range(nh):
            if partner[x] > x:
                hid[x], hid[partner[x]] = 2 * k, 2 * k + 1
                k += 1
        ends = [0] * nh
        for x in range(nh):
            ends[hid[x]] = block[x]
        rot, off = [], 0
        for d in degs:
            rot.append(tuple(hid[x] for x in range(off, off + d)))
            off += d
        return OrientedGraph(Operad.ASSOC, len(degs), tuple(ends), tuple(rot))
    raise ValueError(f"unknown encoding {enc!r}")


def decode(encoding: str) -> CanonicalGraph:
    """Inverse of the encoding: the canonical graph it names."""
    parts = encoding.split("|")
    try:
        g = _decode_connected(parts[0])
        for p in parts[1:]:
            g = g.disjoint_union(_decode_connected(p))
    except (ValueError, IndexError) as exc:
        raise ValueError(f"cannot decode {encoding!r}") from exc
    cg, c = canonicalize(g)
    if cg.encoding != encoding or (c != 1 and not cg.zero):
        raise ValueError(f"{encoding!r} is not a canonical encoding")
    return cg
