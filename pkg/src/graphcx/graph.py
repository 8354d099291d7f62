"""Half-edge multigraphs with operad decorations and orientations.

Two representations live here.  :class:`HalfEdgeGraph` plus
:class:`Orientation` is the general form (arbitrary half-edge labels, an
explicit pairing involution, an explicit vertex order and edge heads); it is
what files carry and what :func:`validate` inspects.  :class:`OrientedGraph`
is the normalized form every operator works on:

* vertices are ``0 .. nv-1`` and their index *is* the vertex order;
* edge ``k`` consists of half-edges ``2k`` (tail) and ``2k + 1`` (head), so
  the pairing is ``h ^ 1`` and the direction is built in;
* ``ends[h]`` is the vertex carrying half-edge ``h``;
* for ribbon (Assoc) graphs ``rot[v]`` lists the half-edges at ``v`` in
  cyclic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence


class Operad(str, Enum):
    COMM = "comm"
    ASSOC = "assoc"

    @classmethod
    def parse(cls, value) -> "Operad":
        if isinstance(value, Operad):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown operad {value!r}; expected 'comm' or 'assoc'") from None


def permutation_parity(perm: Sequence[int]) -> int:
    """Parity (0 or 1) of a permutation of ``range(len(perm))``."""
    seen = [False] * len(perm)
    parity = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


@dataclass(frozen=True)
class OrientedGraph:
    operad: Operad
    nv: int
    ends: tuple[int, ...]
    rot: tuple[tuple[int, ...], ...] | None = None

    @property
    def ne(self) -> int:
        return len(self.ends) // 2

    def edge(self, k: int) -> tuple[int, int]:
        """(tail vertex, head vertex) of edge ``k``."""
        return self.ends[2 * k], self.ends[2 * k + 1]

    def edges(self) -> list[tuple[int, int]]:
        e = self.ends
        return [(e[2 * k], e[2 * k + 1]) for k in range(len(e) // 2)]

    def is_loop(self, k: int) -> bool:
        return self.ends[2 * k] == self.ends[2 * k + 1]

    def valences(self) -> list[int]:
        deg = [0] * self.nv
        for v in self.ends:
            deg[v] += 1
        return deg

    def half_edges_at(self) -> list[list[int]]:
        if self.rot is not None:
            return [list(r) for r in self.rot]
        out: list[list[int]] = [[] for _ in range(self.nv)]
        for h, v in enumerate(self.ends):
            out[v].append(h)
        return out

    def components(self) -> list[list[int]]:
        """Vertex sets of the connected components, each sorted, ordered by
        smallest vertex."""
        parent = list(range(self.nv))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        e = self.ends
        for k in range(len(e) // 2):
            a, b = find(e[2 * k]), find(e[2 * k + 1])
            if a != b:
                parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for v in range(self.nv):
            groups.setdefault(find(v), []).append(v)
        return [groups[r] for r in sorted(groups)]

    def n_components(self) -> int:
        return len(self.components())

    def b1(self) -> int:
        return self.ne - self.nv + self.n_components()

    def subgraph(self, vertices: Sequence[int]) -> "OrientedGraph":
        """Induced subgraph on a union of components, vertices kept in the
        given order and edges in their original relative order."""
        pos = {v: i for i, v in enumerate(vertices)}
        ends = []
        hmap = {}
        for k in range(self.ne):
            t, h = self.ends[2 * k], self.ends[2 * k + 1]
            if t in pos:
                if h not in pos:
                    raise ValueError("vertex set is not a union of components")
                hmap[2 * k] = len(ends)
                hmap[2 * k + 1] = len(ends) + 1
                ends += [pos[t], pos[h]]
        rot = None
        if self.rot is not None:
            rot = tuple(tuple(hmap[x] for x in self.rot[v]) for v in vertices)
        return OrientedGraph(self.operad, len(vertices), tuple(ends), rot)

    def disjoint_union(self, other: "OrientedGraph") -> "OrientedGraph":
        """``self`` followed by ``other``: vertex order concatenated, other's
        labels shifted."""
        if self.operad != other.operad:
            raise ValueError("operad mismatch")
        sv, sh = self.nv, len(self.ends)
        ends = self.ends + tuple(v + sv for v in other.ends)
        rot = None
        if self.rot is not None:
            rot = self.rot + tuple(tuple(h + sh for h in r) for r in other.rot)
        return OrientedGraph(self.operad, self.nv + other.nv, ends, rot)

    def to_halfedge(self) -> tuple["HalfEdgeGraph", "Orientation"]:
        pairing = tuple(h ^ 1 for h in range(len(self.ends)))
        hg = HalfEdgeGraph(self.operad, self.nv, self.ends, pairing, self.rot)
        orient = Orientation(tuple(range(self.nv)), tuple(2 * k + 1 for k in range(self.ne)))
        return hg, orient


def graph_from_edges(operad, nv: int, edges: Iterable[tuple[int, int]],
                     rot: Sequence[Sequence[int]] | None = None) -> OrientedGraph:
    """Build an oriented graph from directed ``(tail, head)`` vertex pairs.

    For Assoc graphs ``rot`` gives cyclic orders in half-edge numbering
    (edge ``k`` owns half-edges ``2k``, ``2k + 1``).  If omitted for Assoc,
    half-edges are taken in increasing order at each vertex.
    """
    operad = Operad.parse(operad)
    ends = tuple(v for e in edges for v in e)
    if operad is Operad.ASSOC:
        if rot is None:
            rot = [[h for h, v in enumerate(ends) if v == u] for u in range(nv)]
        rot = tuple(tuple(r) for r in rot)
    else:
        rot = None
    return OrientedGraph(operad, nv, ends, rot)


# --- general form -----------------------------------------------------------

@dataclass(frozen=True)
class HalfEdgeGraph:
    operad: Operad
    vertex_count: int
    incidence: tuple[int, ...]
    pairing: tuple[int, ...]
    cyclic_orders: tuple[tuple[int, ...], ...] | None = None


@dataclass(frozen=True)
class Orientation:
    """``vertex_order[v]`` is the position (0-based) of vertex ``v``;
    ``edge_heads`` lists one head half-edge per edge."""
    vertex_order: tuple[int, ...]
    edge_heads: tuple[int, ...]


def validate(g: HalfEdgeGraph) -> list[str]:
    """Return every violated invariant of ``g`` (empty list means valid)."""
    problems = []
    nh = len(g.incidence)
    if g.vertex_count < 1:
        problems.append("vertex count must be positive")
    if nh % 2:
        problems.append("odd number of half-edges")
    if len(g.pairing) != nh:
        problems.append("pairing length does not match half-edge count")
    else:
        for h, p in enumerate(g.pairing):
            if not 0 <= p < nh:
                problems.append(f"pairing of half-edge {h} out of range")
            elif p == h:
                problems.append(f"pairing fixes half-edge {h}")
            elif g.pairing[p] != h:
                problems.append(f"pairing is not an involution at half-edge {h}")
    deg = [0] * max(g.vertex_count, 0)
    for h, v in enumerate(g.incidence):
        if not 0 <= v < g.vertex_count:
            problems.append(f"half-edge {h} attached to missing vertex {v}")
        else:
            deg[v] += 1
    for v, d in enumerate(deg):
        if d < 3:
            problems.append(f"valence < 3 at vertex {v}")
    if Operad.parse(g.operad) is Operad.ASSOC:
        if g.cyclic_orders is None or len(g.cyclic_orders) != g.vertex_count:
            problems.append("decoration mismatch: one cyclic order per vertex required")
        else:
            for v, cyc in enumerate(g.cyclic_orders):
                expected = sorted(h for h, u in enumerate(g.incidence) if u == v)
                if sorted(cyc) != expected:
                    problems.append(f"decoration mismatch at vertex {v}")
    elif g.cyclic_orders:
        problems.append("decoration mismatch: Comm graphs carry no cyclic orders")
    return problems


def validate_orientation(g: HalfEdgeGraph, o: Orientation) -> list[str]:
    problems = []
    if sorted(o.vertex_order) != list(range(g.vertex_count)):
        problems.append("vertex order is not a permutation")
    heads = set(o.edge_heads)
    if len(heads) != len(o.edge_heads):
        problems.append("repeated edge head")
    seen = set()
    for h in o.edge_heads:
        if not 0 <= h < len(g.pairing):
            problems.append(f"edge head {h} out of range")
            continue
        edge = frozenset((h, g.pairing[h]))
        if edge in seen:
            problems.append(f"edge {sorted(edge)} has two heads")
        seen.add(edge)
    if 2 * len(seen) != len(g.pairing):
        problems.append("every edge needs exactly one head")
    return problems


def orient(g: HalfEdgeGraph, o: Orientation) -> OrientedGraph:
    """Normalize a general graph with orientation data."""
    problems = validate(g) + validate_orientation(g, o)
    if problems:
        raise ValueError("; ".join(problems))
    heads = sorted(o.edge_heads, key=lambda h: min(h, g.pairing[h]))
    hmap = {}
    ends = []
    for k, h in enumerate(heads):
        t = g.pairing[h]
        hmap[t], hmap[h] = 2 * k, 2 * k + 1
        ends += [o.vertex_order[g.incidence[t]], o.vertex_order[g.incidence[h]]]
    rot = None
    operad = Operad.parse(g.operad)
    if operad is Operad.ASSOC:
        r = [None] * g.vertex_count
        for v, cyc in enumerate(g.cyclic_orders):
            r[o.vertex_order[v]] = tuple(hmap[h] for h in cyc)
        rot = tuple(r)
    return OrientedGraph(operad, g.vertex_count, tuple(ends), rot)


# --- the even action ----------------------------------------------------------

@dataclass(frozen=True)
class ReindexElement:
    """An element of S_V x Z_2^E: ``vertex_perm[v]`` is the new position of
    vertex ``v``; ``flipped`` holds the edges whose direction is reversed."""
    vertex_perm: tuple[int, ...]
    flipped: frozenset[int] = field(default_factory=frozenset)

    @property
    def parity(self) -> int:
        return (permutation_parity(self.vertex_perm) + len(self.flipped)) & 1

    @property
    def sign(self) -> int:
        return -1 if self.parity else 1


def act(og: OrientedGraph, r: ReindexElement) -> tuple[OrientedGraph, int]:
    """Relabel ``og`` by ``r``.  The result equals ``sign * og`` in the
    complex, where ``sign`` is +1 exactly when ``r`` is even."""
    if len(r.vertex_perm) != og.nv or sorted(r.vertex_perm) != list(range(og.nv)):
        raise ValueError("vertex permutation incompatible with graph")
    if any(not 0 <= k < og.ne for k in r.flipped):
        raise ValueError("flipped edge not in graph")
    perm = r.vertex_perm
    hmap = [h ^ 1 if (h >> 1) in r.flipped else h for h in range(2 * og.ne)]
    ends = [0] * len(og.ends)
    for h, v in enumerate(og.ends):
        ends[hmap[h]] = perm[v]
    rot = None
    if og.rot is not None:
        new = [None] * og.nv
        for v, cyc in enumerate(og.rot):
            new[perm[v]] = tuple(hmap[h] for h in cyc)
        rot = tuple(new)
    return OrientedGraph(og.operad, og.nv, tuple(ends), rot), r.sign


# --- statistics ---------------------------------------------------------------

@dataclass(frozen=True)
class GraphStats:
    b1: int
    connected: bool
    has_separating_edge: bool


def bridges(og: OrientedGraph) -> list[int]:
    """Edges whose removal increases the number of components."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(og.nv)]
    for k, (a, b) in enumerate(og.edges()):
        if a != b:
            adj[a].append((b, k))
            adj[b].append((a, k))
    disc = [-1] * og.nv
    low = [0] * og.nv
    out = []
    timer = 0
    for root in range(og.nv):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, via, it = stack[-1]
            for w, k in it:
                if k == via:
                    continue
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, k, iter(adj[w])))
                    break
                low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] > disc[u]:
                        out.append(via)
    return sorted(out)


def graph_stats(og: OrientedGraph) -> GraphStats:
    return GraphStats(b1=og.b1(), connected=og.n_components() == 1,
                      has_separating_edge=bool(bridges(og)))


def is_irreducible(og: OrientedGraph) -> bool:
    return og.n_components() == 1 and not bridges(og)
