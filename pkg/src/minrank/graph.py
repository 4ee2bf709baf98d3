"""Simple undirected graphs on at most ten vertices, stored as neighbor bitsets.

Vertex sets are plain ``int`` bitmasks throughout the package: bit ``v`` is set
iff vertex ``v`` belongs to the set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

MAX_ORDER = 11


class GraphError(ValueError):
    """Raised for malformed graphs or invalid structural requests."""


def members(mask: int) -> list[int]:
    """Vertices of a bitmask in increasing order."""
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    _edges: tuple[tuple[int, int], ...] | None = field(
        default=None, init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_ORDER:
            raise GraphError(f"order {self.n} outside 0..{MAX_ORDER}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match order")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbor outside the graph")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"edge {v}-{u} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} outside 0..{n - 1}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> Graph:
        return cls.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> tuple[tuple[int, int], ...]:
        if self._edges is None:
            es = tuple(
                (u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if u < v
            )
            object.__setattr__(self, "_edges", es)
        return self._edges  # type: ignore[return-value]

    @property
    def m(self) -> int:
        return sum(popcount(r) for r in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return members(self.adj[v])

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.adj]

    def is_complete(self) -> bool:
        return all(popcount(r) == self.n - 1 for r in self.adj)

    def add_edge(self, u: int, v: int) -> Graph:
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, tuple(adj))

    def remove_edge(self, u: int, v: int) -> Graph:
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj))

    def induced(self, mask: int) -> Graph:
        """Subgraph induced on ``mask``, relabeled in increasing vertex order."""
        verts = members(mask & self.full)
        pos = {v: i for i, v in enumerate(verts)}
        adj = []
        for v in verts:
            row = 0
            for u in iter_bits(self.adj[v] & mask):
                row |= 1 << pos[u]
            adj.append(row)
        return Graph(len(verts), tuple(adj))

    def delete(self, mask: int) -> Graph:
        return self.induced(self.full & ~mask)

    def delete_vertex(self, v: int) -> Graph:
        return self.induced(self.full & ~(1 << v))

    def relabel(self, perm: list[int] | tuple[int, ...]) -> Graph:
        """Graph in which old vertex ``v`` becomes ``perm[v]``."""
        adj = [0] * self.n
        for v in range(self.n):
            row = 0
            for u in iter_bits(self.adj[v]):
                row |= 1 << perm[u]
            adj[perm[v]] = row
        return Graph(self.n, tuple(adj))

    def join_vertex(self, nbrs: int) -> Graph:
        """Add a new vertex ``n`` adjacent to the vertex set ``nbrs``."""
        adj = [r | (1 << self.n) if nbrs >> v & 1 else r for v, r in enumerate(self.adj)]
        adj.append(nbrs)
        return Graph(self.n + 1, tuple(adj))

    def __str__(self) -> str:
        es = ",".join(f"{u}-{v}" for u, v in self.edges())
        return f"Graph(n={self.n}, edges=[{es}])"


def components(g: Graph, mask: int | None = None) -> list[int]:
    """Connected components of the subgraph induced on ``mask`` (default all)."""
    rest = g.full if mask is None else mask & g.full
    comps = []
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = g.adj[v] & rest & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return len(components(g)) == 1


def _disconnects(g: Graph, removed: int) -> bool:
    return len(components(g, g.full & ~removed)) > 1


def vertex_connectivity(g: Graph) -> int:
    """Smallest vertex cut size, with ``n - 1`` for complete graphs."""
    if not is_connected(g):
        raise GraphError("vertex connectivity requires a connected graph")
    if g.is_complete():
        return max(g.n - 1, 0)
    for k in range(1, g.n - 1):
        for cut in combinations(range(g.n), k):
            if _disconnects(g, mask_of(cut)):
                return k
    return g.n - 1  # unreachable for non-complete graphs


def cut_vertices(g: Graph) -> int:
    if g.n < 3:
        return 0
    base = len(components(g))
    out = 0
    for v in range(g.n):
        if len(components(g, g.full & ~(1 << v))) > base:
            out |= 1 << v
    return out


@dataclass(frozen=True)
class CutSplit:
    """``G = G1 (+)_v G2``; ``cut1``/``cut2`` are the positions of ``v`` in each side."""

    g1: Graph
    g2: Graph
    cut1: int
    cut2: int
    side1: int
    side2: int


def _bipartitions(parts: list[int], ordered: bool) -> Iterator[tuple[int, int]]:
    k = len(parts)
    for sel in range(1, (1 << k) - 1):
        if not ordered and sel & 1 == 0:
            continue
        a = b = 0
        for i, p in enumerate(parts):
            if sel >> i & 1:
                a |= p
            else:
                b |= p
        yield a, b


def split_at_cut_vertex(g: Graph, v: int) -> list[CutSplit]:
    """All decompositions ``G = G1 (+)_v G2`` grouping the components of ``G - v``."""
    comps = components(g, g.full & ~(1 << v))
    if len(comps) < 2:
        raise GraphError(f"vertex {v} is not a cut vertex")
    bit = 1 << v
    out = []
    for a, b in _bipartitions(comps, ordered=False):
        s1, s2 = a | bit, b | bit
        out.append(
            CutSplit(
                g.induced(s1),
                g.induced(s2),
                popcount(s1 & (bit - 1)),
                popcount(s2 & (bit - 1)),
                s1,
                s2,
            )
        )
    return out


@dataclass(frozen=True)
class TwoSeparation:
    """A 2-separation ``(G1, G2)`` of ``graph`` along ``R = {r1, r2}``.

    ``v1``/``v2`` are vertex masks; when ``r1r2`` is an edge it belongs to ``G1``.
    """

    graph: Graph
    r1: int
    r2: int
    v1: int
    v2: int

    @property
    def rmask(self) -> int:
        return (1 << self.r1) | (1 << self.r2)

    def edges1(self) -> set[tuple[int, int]]:
        return {(u, v) for u, v in self.graph.edges() if self.v1 >> u & 1 and self.v1 >> v & 1}

    def edges2(self) -> set[tuple[int, int]]:
        r = (min(self.r1, self.r2), max(self.r1, self.r2))
        return {
            (u, v)
            for u, v in self.graph.edges()
            if self.v2 >> u & 1 and self.v2 >> v & 1 and (u, v) != r
        }


def two_separations(g: Graph) -> list[TwoSeparation]:
    seps = []
    for r1, r2 in combinations(range(g.n), 2):
        rmask = (1 << r1) | (1 << r2)
        comps = components(g, g.full & ~rmask)
        if len(comps) < 2:
            continue
        for a, b in _bipartitions(comps, ordered=True):
            seps.append(TwoSeparation(g, r1, r2, a | rmask, b | rmask))
    return seps


def merge_with_multiplicity(g: Graph, r1: int, r2: int) -> tuple[Graph, int]:
    """Identify ``r1`` and ``r2``; also report the doubled edges at the merged vertex.

    The merged vertex takes the smaller label.  The second value is the mask (in
    the new labeling) of vertices that were adjacent to both ``r1`` and ``r2``;
    those edges arose as parallel pairs and were suppressed.
    """
    if r1 == r2:
        raise GraphError("cannot identify a vertex with itself")
    keep, drop = min(r1, r2), max(r1, r2)
    both = g.adj[r1] & g.adj[r2] & ~((1 << r1) | (1 << r2))
    union = (g.adj[r1] | g.adj[r2]) & ~((1 << r1) | (1 << r2))
    adj = list(g.adj)
    adj[keep] = union
    for u in iter_bits(union):
        adj[u] = (adj[u] & ~(1 << drop)) | (1 << keep)
    merged = Graph(g.n, tuple(a & ~(1 << drop) if i != drop else 0 for i, a in enumerate(adj)))
    out = merged.delete_vertex(drop)
    low = (1 << drop) - 1
    doubled = (both & low) | ((both >> 1) & ~low)
    return out, doubled


def identify_vertices(g: Graph, r1: int, r2: int) -> Graph:
    return merge_with_multiplicity(g, r1, r2)[0]


@dataclass(frozen=True)
class SeparationGraphs:
    """The twelve graphs derived from a 2-separation.

    ``bar1_doubled``/``bar2_doubled`` mark the edges of ``bar1``/``bar2`` that
    came from parallel pairs when ``r1`` and ``r2`` were identified.
    ``h1_doubled``/``h2_doubled`` hold ``r1r2`` when ``H_i`` got it a second time.
    """

    g1: Graph
    g2: Graph
    h1: Graph
    h2: Graph
    bar1: Graph
    bar2: Graph
    g1_minus_r1: Graph
    g2_minus_r1: Graph
    g1_minus_r2: Graph
    g2_minus_r2: Graph
    g1_minus_r: Graph
    g2_minus_r: Graph
    bar1_doubled: tuple[tuple[int, int], ...] = ()
    bar2_doubled: tuple[tuple[int, int], ...] = ()
    h1_doubled: tuple[tuple[int, int], ...] = ()
    h2_doubled: tuple[tuple[int, int], ...] = ()


def _side(g: Graph, vmask: int, r1: int, r2: int, drop_r_edge: bool) -> tuple[Graph, int, int]:
    side = g.induced(vmask)
    p1 = popcount(vmask & ((1 << r1) - 1))
    p2 = popcount(vmask & ((1 << r2) - 1))
    if drop_r_edge and side.has_edge(p1, p2):
        side = side.remove_edge(p1, p2)
    return side, p1, p2


def derived_separation_graphs(sep: TwoSeparation) -> SeparationGraphs:
    g = sep.graph
    g1, a1, b1 = _side(g, sep.v1, sep.r1, sep.r2, drop_r_edge=False)
    g2, a2, b2 = _side(g, sep.v2, sep.r1, sep.r2, drop_r_edge=True)

    def bar(side: Graph, a: int, b: int) -> tuple[Graph, tuple[tuple[int, int], ...]]:
        merged, doubled = merge_with_multiplicity(side, a, b)
        w = min(a, b)
        return merged, tuple(sorted((min(w, u), max(w, u)) for u in iter_bits(doubled)))

    bar1, d1 = bar(g1, a1, b1)
    bar2, d2 = bar(g2, a2, b2)

    def again(side: Graph, a: int, b: int) -> tuple[tuple[int, int], ...]:
        return ((min(a, b), max(a, b)),) if side.has_edge(a, b) else ()
    return SeparationGraphs(
        g1=g1,
        g2=g2,
        h1=g1.add_edge(a1, b1),
        h2=g2.add_edge(a2, b2),
        bar1=bar1,
        bar2=bar2,
        g1_minus_r1=g1.delete_vertex(a1),
        g2_minus_r1=g2.delete_vertex(a2),
        g1_minus_r2=g1.delete_vertex(b1),
        g2_minus_r2=g2.delete_vertex(b2),
        g1_minus_r=g1.delete((1 << a1) | (1 << b1)),
        g2_minus_r=g2.delete((1 << a2) | (1 << b2)),
        bar1_doubled=d1,
        bar2_doubled=d2,
        h1_doubled=again(g1, a1, b1),
        h2_doubled=again(g2, a2, b2),
    )


def twins(g: Graph) -> list[tuple[int, int, bool]]:
    out = []
    for v, w in combinations(range(g.n), 2):
        bv, bw = 1 << v, 1 << w
        if g.adj[v] & ~bw == g.adj[w] & ~bv:
            out.append((v, w, bool(g.adj[v] & bw)))
    return out


def dominating_vertices(g: Graph) -> int:
    full = g.full
    out = 0
    for v in range(g.n):
        if g.adj[v] == full & ~(1 << v):
            out |= 1 << v
    return out
