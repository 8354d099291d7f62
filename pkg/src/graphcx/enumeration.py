"""Basis enumeration by loop number and vertex count, and brute-force
oracles used to certify the fast canonical forms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, permutations, product

from .canon import CanonicalGraph, canonicalize, koszul_sort, block_permutation_sign
from .complex import insert_edge, vertex_splits
from .graph import Operad, OrientedGraph, ReindexElement, graph_from_edges, permutation_parity


@dataclass(frozen=True)
class BasisSlice:
    operad: Operad
    loops: int
    nv: int
    elements: tuple[CanonicalGraph, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def index(self) -> dict[CanonicalGraph, int]:
        return {g: i for i, g in enumerate(self.elements)}


def _chord_diagrams(n: int) -> list[OrientedGraph]:
    """One-vertex ribbon graphs with ``n`` loops: all pairings of ``2n``
    points on a circle."""
    out = []

    def rec(free: list[int], pairs: list[tuple[int, int]]):
        if not free:
            edges_pos = pairs
            # half-edge 2k, 2k+1 of edge k sit at circle positions p, q
            rot = [0] * (2 * n)
            for k, (p, q) in enumerate(edges_pos):
                rot[p], rot[q] = 2 * k, 2 * k + 1
            out.append(OrientedGraph(Operad.ASSOC, 1, (0,) * (2 * n), (tuple(rot),)))
            return
        a = free[0]
        for j in range(1, len(free)):
            rec(free[1:j] + free[j + 1:], pairs + [(a, free[j])])

    rec(list(range(2 * n)), [])
    return out


@lru_cache(maxsize=None)
def all_classes(operad: Operad, n: int, nv: int) -> tuple[CanonicalGraph, ...]:
    """Every connected isomorphism class with loop number ``n`` and ``nv``
    vertices, orientation-killed classes included, sorted by encoding.

    Each class with ``nv + 1`` vertices contracts along a non-loop edge to a
    class with ``nv`` vertices, so splitting vertices of the smaller classes
    in every admissible way reaches all of them.
    """
    operad = Operad.parse(operad)
    if n < 2 or nv < 1 or nv > 2 * n - 2:
        return ()
    if nv == 1:
        if operad is Operad.COMM:
            seeds = [graph_from_edges(operad, 1, [(0, 0)] * n)]
        else:
            seeds = _chord_diagrams(n)
        found = {}
        for g in seeds:
            cg, _ = canonicalize(g)
            found[cg.encoding] = cg
        return tuple(found[k] for k in sorted(found))
    found = {}
    for cg in all_classes(operad, n, nv - 1):
        og = cg.graph
        for v in range(og.nv):
            for part, other in vertex_splits(og, v):
                g, _ = insert_edge(og, v, part, other)
                h, _ = canonicalize(g)
                found.setdefault(h.encoding, h)
    return tuple(found[k] for k in sorted(found))


def check_slice_range(n: int, nv: int) -> None:
    if n < 1:
        raise ValueError("loop number must be at least 1")
    if not 1 <= nv <= max(2 * n - 2, 1):
        raise ValueError(f"vertex count {nv} out of range 1..{2 * n - 2} for loop number {n}")


@lru_cache(maxsize=None)
def enumerate_basis(operad, n: int, nv: int) -> BasisSlice:
    """Nonzero connected basis graphs with ``b1 = n`` and ``nv`` vertices."""
    operad = Operad.parse(operad)
    check_slice_range(n, nv)
    elems = tuple(g for g in all_classes(operad, n, nv) if not g.zero)
    return BasisSlice(operad, n, nv, elems)


def basis_range(n: int) -> range:
    return range(1, max(2 * n - 2, 1) + 1)


# --- oracles ----------------------------------------------------------------------

ORACLE_MAX_V = 5
ORACLE_MAX_E = 7


def _comm_key(og: OrientedGraph, order) -> tuple:
    mult = {}
    for a, b in og.edges():
        key = (min(a, b), max(a, b))
        mult[key] = mult.get(key, 0) + 1
    deg = og.valences()
    cols = []
    for j, v in enumerate(order):
        col = [deg[v], -mult.get((v, v), 0)]
        for u in order[:j]:
            col.append(-mult.get((min(u, v), max(u, v)), 0))
        cols.append(tuple(col))
    return tuple(cols)


def _assoc_labeling(og: OrientedGraph, order, starts) -> list[int]:
    label = [0] * len(og.ends)
    off = 0
    for v, s in zip(order, starts):
        cyc = og.rot[v]
        d = len(cyc)
        for i in range(d):
            label[cyc[(s + i) % d]] = off + i
        off += d
    return label


def _assoc_key(og: OrientedGraph, order, label) -> tuple | None:
    """Block-by-block (degree, partner numbers) key of a numbering, or
    ``None`` unless a traversal could produce the numbering.

    For ``j >= 1`` let ``m_j`` be the smallest number of a partner, at an
    earlier vertex, of a half-edge at ``order[j]``.  The ``m_j`` must
    increase, and the half-edge achieving ``m_j`` must start its block.
    """
    pos = {v: i for i, v in enumerate(order)}
    offsets, off = [], 0
    for v in order:
        offsets.append(off)
        off += len(og.rot[v])
    prev = -1
    for j in range(1, len(order)):
        cand = [(label[h ^ 1], h) for h in og.rot[order[j]] if pos[og.ends[h ^ 1]] < j]
        if not cand:
            return None
        m, h = min(cand)
        if m <= prev or label[h] != offsets[j]:
            return None
        prev = m
    partner = [0] * len(label)
    for h, x in enumerate(label):
        partner[x] = label[h ^ 1]
    key = []
    for v, o in zip(order, offsets):
        d = len(og.rot[v])
        key.append(d)
        key.extend(partner[o:o + d])
    return tuple(key)


def _odd_automorphism_exists(og: OrientedGraph) -> bool:
    """Depth-first search over vertex permutations and edge images; stops at
    the first automorphism acting oddly on vertex order and edge
    directions."""
    edges = og.edges()
    ne = len(edges)
    for vperm in permutations(range(og.nv)):
        vpar = permutation_parity(vperm)
        hmap = [None] * (2 * ne)
        used = [False] * ne

        def rec(k: int, flips: int) -> bool:
            if k == ne:
                if (vpar + flips) & 1 == 0:
                    return False
                if og.rot is not None:
                    for v, cyc in enumerate(og.rot):
                        img = [hmap[h] for h in cyc]
                        tgt = og.rot[vperm[v]]
                        s = tgt.index(img[0])
                        if any(tgt[(s + i) % len(tgt)] != img[i] for i in range(len(img))):
                            return False
                return True
            a, b = edges[k]
            for t in range(ne):
                if used[t]:
                    continue
                ta, tb = edges[t]
                for flip in (0, 1):
                    x, y = (tb, ta) if flip else (ta, tb)
                    if (vperm[a], vperm[b]) != (x, y):
                        continue
                    used[t] = True
                    hmap[2 * k] = 2 * t + flip
                    hmap[2 * k + 1] = 2 * t + 1 - flip
                    if rec(k + 1, flips + flip):
                        return True
                    used[t] = False
            return False

        if rec(0, 0):
            return True
    return False


def _oracle_connected(og: OrientedGraph) -> tuple[str, int]:
    best = None
    if og.operad is Operad.COMM:
        for order in permutations(range(og.nv)):
            key = _comm_key(og, order)
            if best is None or key < best[0]:
                best = (key, order)
        order = best[1]
        pos = [0] * og.nv
        for i, v in enumerate(order):
            pos[v] = i
        flips = 0
        pairs = []
        for a, b in og.edges():
            if pos[a] > pos[b]:
                flips += 1
            pairs.append((min(pos[a], pos[b]), max(pos[a], pos[b])))
        enc = "C" + str(og.nv) + ":" + ",".join(f"{a}-{b}" for a, b in sorted(pairs))
        sign = -1 if (permutation_parity(pos) + flips) & 1 else 1
    else:
        degs = [len(r) for r in og.rot]
        for order in permutations(range(og.nv)):
            for starts in product(*[range(degs[v]) for v in order]):
                label = _assoc_labeling(og, order, starts)
                key = _assoc_key(og, order, label)
                if key is not None and (best is None or key < best[0]):
                    best = (key, order, label)
        _, order, label = best
        pos = [0] * og.nv
        for i, v in enumerate(order):
            pos[v] = i
        partner = [0] * len(og.ends)
        flips = 0
        for k in range(og.ne):
            x, y = label[2 * k], label[2 * k + 1]
            partner[x], partner[y] = y, x
            flips += x > y
        enc = "A" + ".".join(str(degs[v]) for v in order) + ":" + ",".join(map(str, partner))
        sign = -1 if (permutation_parity(pos) + flips) & 1 else 1
    if _odd_automorphism_exists(og):
        sign = 0
    return enc, sign


def oracle_canonicalize(og: OrientedGraph) -> tuple[str, int]:
    """Exhaustive-search counterpart of :func:`canonicalize`: minimal key over
    every labeling, zero flag from an exhaustive automorphism search."""
    if og.nv > ORACLE_MAX_V or og.ne > ORACLE_MAX_E:
        raise ValueError(f"oracle limited to V <= {ORACLE_MAX_V}, E <= {ORACLE_MAX_E}")
    comps = og.components()
    if len(comps) == 1:
        return _oracle_connected(og)
    sign = block_permutation_sign(comps, og.nv)
    parts = []
    for comp in comps:
        sub = og.subgraph(comp)
        enc, c = _oracle_connected(sub)
        parts.append((enc, sub.nv & 1))
        sign *= c
    parts, s = koszul_sort(parts, key=lambda p: p[0], parity=lambda p: p[1])
    if _odd_automorphism_exists(og):
        sign = 0
    return "|".join(p[0] for p in parts), sign * s


def brute_force_isomorphic(a: OrientedGraph, b: OrientedGraph) -> bool:
    """Exhaustive isomorphism test over vertex bijections and edge images."""
    if (a.operad, a.nv, a.ne) != (b.operad, b.nv, b.ne):
        return False
    ea, eb = a.edges(), b.edges()
    ne = len(ea)
    for vperm in permutations(range(a.nv)):
        hmap = [None] * (2 * ne)
        used = [False] * ne

        def rec(k: int) -> bool:
            if k == ne:
                if a.rot is None:
                    return True
                for v, cyc in enumerate(a.rot):
                    img = [hmap[h] for h in cyc]
                    tgt = b.rot[vperm[v]]
                    if len(tgt) != len(img):
                        return False
                    s = tgt.index(img[0])
                    if any(tgt[(s + i) % len(tgt)] != img[i] for i in range(len(img))):
                        return False
                return True
            x, y = ea[k]
            for t in range(ne):
                if used[t]:
                    continue
                for flip in (0, 1):
                    p, q = (eb[t][1], eb[t][0]) if flip else eb[t]
                    if (vperm[x], vperm[y]) != (p, q):
                        continue
                    used[t] = True
                    hmap[2 * k], hmap[2 * k + 1] = 2 * t + flip, 2 * t + 1 - flip
                    if rec(k + 1):
                        return True
                    used[t] = False
            return False

        if rec(0):
            return True
    return False


def brute_force_classes(operad, n: int, nv: int) -> list[OrientedGraph]:
    """All connected graphs with ``b1 = n``, ``nv`` vertices and valence at
    least 3, one per labeled edge multiset (and per cyclic-order choice for
    Assoc) -- no isomorphism reduction.  Exponential; for small cases only."""
    operad = Operad.parse(operad)
    ne = nv + n - 1
    slots = [(a, b) for a in range(nv) for b in range(a, nv)]
    out = []
    for edges in combinations_with_replacement(slots, ne):
        g = graph_from_edges(Operad.COMM, nv, edges)
        if min(g.valences()) < 3 or g.n_components() != 1:
            continue
        if operad is Operad.COMM:
            out.append(g)
            continue
        at = g.half_edges_at()
        choices = []
        for hs in at:
            choices.append([(hs[0],) + p for p in permutations(hs[1:])])
        for rots in product(*choices):
            out.append(OrientedGraph(Operad.ASSOC, nv, g.ends, tuple(rots)))
    return out


def random_relabel(og: OrientedGraph, rng) -> tuple[OrientedGraph, int]:
    """Random vertex permutation, edge flips and edge renumbering, with the
    sign relating the copy to ``og``."""
    from .graph import act

    perm = list(range(og.nv))
    rng.shuffle(perm)
    flips = frozenset(k for k in range(og.ne) if rng.random() < 0.5)
    g, sign = act(og, ReindexElement(tuple(perm), flips))
    order = list(range(og.ne))
    rng.shuffle(order)
    hmap = [0] * len(g.ends)
    for new, old in enumerate(order):
        hmap[2 * old], hmap[2 * old + 1] = 2 * new, 2 * new + 1
    ends = [0] * len(g.ends)
    for h, v in enumerate(g.ends):
        ends[hmap[h]] = v
    rot = None
    if g.rot is not None:
        rot = []
        for cyc in g.rot:
            s = rng.randrange(len(cyc))
            cyc = cyc[s:] + cyc[:s]
            rot.append(tuple(hmap[h] for h in cyc))
        rot = tuple(rot)
    return OrientedGraph(g.operad, g.nv, tuple(ends), rot), sign


def random_graph(operad, n: int, nv: int, rng, irreducible: bool = False,
                 attempts: int = 1000) -> CanonicalGraph:
    """A nonzero connected basis graph with ``b1 = n`` and ``nv`` vertices,
    grown by random vertex splits from a one-vertex seed.

    Not uniform over the basis, but reaches every class; used where the
    enumerated slices are too large to list.
    """
    from .graph import bridges

    operad = Operad.parse(operad)
    check_slice_range(n, nv)
    for _ in range(attempts):
        if operad is Operad.COMM:
            og = graph_from_edges(operad, 1, [(0, 0)] * n)
        else:
            free = list(range(2 * n))
            rng.shuffle(free)
            rot = [0] * (2 * n)
            for k in range(n):
                rot[free[2 * k]], rot[free[2 * k + 1]] = 2 * k, 2 * k + 1
            og = OrientedGraph(operad, 1, (0,) * (2 * n), (tuple(rot),))
        while og.nv < nv:
            splits = [(v, p, q) for v in range(og.nv) for p, q in vertex_splits(og, v)]
            if not splits:
                break
            og, _ = insert_edge(og, *rng.choice(splits))
        if og.nv != nv:
            continue
        cg, c = canonicalize(og)
        if not c or (irreducible and bridges(cg.graph)):
            continue
        return cg
    raise ValueError(f"no nonzero graph found for n={n}, V={nv}")
