"""k-trees, k-paths and the small-minimum-rank characterization."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import catalog
from .forcing import Chain, is_zfs, zero_forcing_number
from .graph import Graph, GraphError, is_connected, iter_bits, members, popcount, vertex_connectivity
from .iso import contains_induced


def mr_le_2(g: Graph) -> bool:
    """No induced P4, campstool or dart; equivalent to ``mr <= 2`` below nine vertices."""
    if g.n >= 9:
        raise GraphError("the forbidden subgraph test only holds below nine vertices")
    if not is_connected(g):
        raise GraphError("graph must be connected")
    return not any(contains_induced(g, catalog.get(name)) for name in catalog.MR2_OBSTRUCTIONS)


def _is_clique(g: Graph, mask: int) -> bool:
    return all(g.adj[v] & mask == mask & ~(1 << v) for v in iter_bits(mask))


def is_ktree(g: Graph, k: int) -> bool:
    """Strip simplicial degree-``k`` vertices (lowest index first) down to ``K_{k+1}``."""
    if k < 1 or g.n < k + 1:
        return False
    left = g.full
    while popcount(left) > k + 1:
        for v in iter_bits(left):
            nb = g.adj[v] & left
            if popcount(nb) == k and _is_clique(g, nb):
                left &= ~(1 << v)
                break
        else:
            return False
    return _is_clique(g, left)


@dataclass(frozen=True)
class CliqueSequence:
    """``e0, t1, e1, ..., tp, ep`` as vertex masks: ``edges`` are the k-cliques."""

    k: int
    edges: tuple[int, ...]
    triangles: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.triangles)

    def items(self) -> list[int]:
        out = [self.edges[0]]
        for t, e in zip(self.triangles, self.edges[1:]):
            out += [t, e]
        return out

    def validate(self, g: Graph | None = None) -> None:
        k = self.k
        if self.p < 1 or len(self.edges) != self.p + 1:
            raise GraphError("a clique sequence needs p >= 1 and p + 1 k-cliques")
        seq = self.items()
        if len(set(seq)) != len(seq):
            raise GraphError("cliques in the sequence are not distinct")
        for i, t in enumerate(self.triangles):
            e0, e1 = self.edges[i], self.edges[i + 1]
            if popcount(t) != k + 1 or popcount(e0) != k or popcount(e1) != k:
                raise GraphError(f"wrong clique sizes at step {i + 1}")
            if e0 & ~t or e1 & ~t:
                raise GraphError(f"t_{i + 1} does not contain e_{i} and e_{i + 1}")
        if g is not None:
            for c in seq:
                if not _is_clique(g, c):
                    raise GraphError(f"{members(c)} is not a clique of the graph")

    def forces(self) -> list[tuple[int, int]]:
        """``t_i \\ e_i`` forces ``t_i \\ e_{i-1}``, in order."""
        out = []
        for i, t in enumerate(self.triangles):
            a = t & ~self.edges[i + 1]
            b = t & ~self.edges[i]
            out.append((a.bit_length() - 1, b.bit_length() - 1))
        return out


def recognize_k_path(g: Graph, k: int) -> CliqueSequence | None:
    if not is_connected(g) or not is_ktree(g, k):
        return None
    n = g.n
    if n == k + 1:
        return CliqueSequence(k, (g.full & ~(1 << k), g.full & ~1), (g.full,))
    ends = [v for v in range(n) if g.degree(v) == k]
    if len(ends) != 2:
        return None
    a = ends[0]
    t = g.adj[a] | (1 << a)
    placed = t
    triangles = [t]
    inner: list[int] = []
    while placed != g.full:
        cands = [x for x in iter_bits(g.full & ~placed) if popcount(g.adj[x] & t) == k]
        if len(cands) != 1:
            return None
        x = cands[0]
        e = g.adj[x] & t
        if not _is_clique(g, e):
            return None
        inner.append(e)
        t = e | (1 << x)
        triangles.append(t)
        placed |= 1 << x
    # how long each vertex stays: index of the last triangle holding it
    last = {v: max(i for i, tt in enumerate(triangles) if tt >> v & 1) for v in range(n)}
    first_t = triangles[0]
    x1 = max(iter_bits(first_t & ~(1 << a)), key=lambda v: (last[v], v))
    e0 = first_t & ~(1 << x1)
    # e_p drops the oldest vertex of e_{p-1}
    appear: dict[int, int] = {}
    for i, tt in enumerate(triangles):
        for v in iter_bits(tt):
            appear.setdefault(v, i)
    e_prev = inner[-1] if inner else e0
    oldest = min(iter_bits(e_prev), key=lambda v: (appear[v], v))
    e_last = triangles[-1] & ~(1 << oldest)
    seq = CliqueSequence(k, tuple([e0] + inner + [e_last]), tuple(triangles))
    try:
        seq.validate(g)
    except GraphError:
        return None
    return seq


def kpath_forcing_chains(seq: CliqueSequence, g: Graph | None = None) -> tuple[int, set[Chain]]:
    seq.validate(g)
    nxt = dict(seq.forces())
    chains = set()
    for v in members(seq.edges[0]):
        chain = [v]
        while chain[-1] in nxt:
            chain.append(nxt[chain[-1]])
        chains.add(tuple(chain))
    if g is not None and not is_zfs(g, seq.edges[0]):
        raise GraphError("e0 is not a zero forcing set")
    return seq.edges[0], chains


def _kappa(g: Graph) -> int:
    return vertex_connectivity(g) if is_connected(g) else 0


def chain_edge_connectivity_property(seq: CliqueSequence, g: Graph) -> bool:
    """Deleting any chain edge leaves a graph that is not k-connected."""
    return all(_kappa(g.remove_edge(u, w)) < seq.k for u, w in seq.forces())


def three_connected_z4_rule(g: Graph, z: int | None = None, kappa: int | None = None) -> int | None:
    if not is_connected(g):
        return None
    if kappa is None:
        kappa = vertex_connectivity(g)
    if kappa < 3:
        return None
    if z is None:
        z = zero_forcing_number(g)[0]
    return 4 if z == 4 else None


def complete_to_kpath(g: Graph, k: int) -> Graph | None:
    """A k-path on ``V(g)`` containing every edge of ``g``, if one exists.

    Builds the clique sequence vertex by vertex.  A vertex leaving the active
    clique can gain no further neighbors, and a new vertex sees exactly the
    active k-clique, which prunes the search hard at these sizes.
    """
    n = g.n
    if k < 1 or n < k + 1:
        return None
    full = g.full
    dead: set[tuple[int, int, int]] = set()

    def extend(placed: int, t: int, newest: int, edges: list[int]) -> list[int] | None:
        if placed == full:
            return edges
        state = (placed, t, newest)
        if state in dead:
            return None
        for y in iter_bits(t):
            if y == newest:
                continue
            if g.adj[y] & ~placed:
                continue
            e = t & ~(1 << y)
            for x in iter_bits(full & ~placed):
                if g.adj[x] & placed & ~e:
                    continue
                res = extend(placed | 1 << x, e | 1 << x, x, edges + [e | 1 << x])
                if res is not None:
                    return res
        dead.add(state)
        return None

    for start in combinations(range(n), k + 1):
        t = 0
        for v in start:
            t |= 1 << v
        res = extend(t, t, -1, [t])
        if res is not None:
            adj = [0] * n
            for tri in res:
                for v in iter_bits(tri):
                    adj[v] |= tri & ~(1 << v)
            out = Graph(n, tuple(adj))
            assert all(out.has_edge(u, v) for u, v in g.edges())
            return out
    return None
