"""Canonical labeling by equitable refinement and individualization.

The search keeps the lexicographically largest relabeled adjacency over the
leaves of the individualization tree.  Two kinds of pruning keep it cheap on
highly symmetric graphs: a leaf that reproduces the first (or best) code yields
an automorphism and the search backs up to where the two paths diverged, and
children of a node are skipped when an automorphism fixing the current prefix
maps them onto an already explored sibling.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .graph import Graph
from .graph6 import encode

Cells = list[list[int]]


def _refine(adj: tuple[int, ...], cells: Cells) -> Cells:
    while True:
        for s in range(len(cells)):
            smask = 0
            for v in cells[s]:
                smask |= 1 << v
            new: Cells = []
            split = False
            for cell in cells:
                if len(cell) == 1:
                    new.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault((adj[v] & smask).bit_count(), []).append(v)
                if len(groups) == 1:
                    new.append(cell)
                else:
                    split = True
                    for c in sorted(groups):
                        new.append(groups[c])
            if split:
                cells = new
                break
        else:
            return cells


def _leaf_code(adj: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    rows = []
    for v in order:
        r = 0
        a = adj[v]
        while a:
            low = a & -a
            r |= 1 << pos[low.bit_length() - 1]
            a ^= low
        rows.append(r)
    return tuple(rows)


class _Search:
    def __init__(self, g: Graph) -> None:
        self.adj = g.adj
        self.n = g.n
        self.first: tuple | None = None
        self.best: tuple | None = None
        self.gens: list[list[int]] = []

    def _aut(self, order_a: list[int], order_b: list[int]) -> None:
        perm = [0] * self.n
        for a, b in zip(order_a, order_b):
            perm[a] = b
        if any(perm[v] != v for v in range(self.n)):
            self.gens.append(perm)

    @staticmethod
    def _diverge(p: list[int], q: list[int]) -> int:
        for i, (a, b) in enumerate(zip(p, q)):
            if a != b:
                return i
        return min(len(p), len(q))

    def _orbit_root(self, path: list[int]):
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for perm in self.gens:
            if all(perm[p] == p for p in path):
                for v in range(self.n):
                    a, b = find(v), find(perm[v])
                    if a != b:
                        parent[a] = b
        return find

    def dfs(self, cells: Cells, path: list[int]) -> int | None:
        if len(cells) == self.n:
            order = [c[0] for c in cells]
            code = _leaf_code(self.adj, order)
            if self.first is None:
                self.first = self.best = (code, order, list(path))
                return None
            if code == self.first[0]:
                self._aut(self.first[1], order)
                return self._diverge(path, self.first[2])
            assert self.best is not None
            if code == self.best[0]:
                self._aut(self.best[1], order)
                return self._diverge(path, self.best[2])
            if code > self.best[0]:
                self.best = (code, order, list(path))
            return None
        ti = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = sorted(cells[ti])
        explored: list[int] = []
        depth = len(path)
        for v in target:
            if explored and self.gens:
                find = self._orbit_root(path)
                root = find(v)
                if any(find(u) == root for u in explored):
                    continue
            explored.append(v)
            rest = [u for u in cells[ti] if u != v]
            child = cells[:ti] + [[v], rest] + cells[ti + 1 :]
            res = self.dfs(_refine(self.adj, child), path + [v])
            if res is not None and res < depth:
                return res
        return None


@lru_cache(maxsize=1 << 18)
def canonical_form(g: Graph) -> tuple[str, tuple[int, ...]]:
    """Canonical graph6 key and the relabeling ``perm`` (old ``v`` -> ``perm[v]``)."""
    if g.n == 0:
        return encode(g), ()
    degs: dict[int, list[int]] = {}
    for v in range(g.n):
        degs.setdefault(g.adj[v].bit_count(), []).append(v)
    cells = _refine(g.adj, [degs[d] for d in sorted(degs)])
    search = _Search(g)
    search.dfs(cells, [])
    assert search.best is not None
    order = search.best[1]
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return encode(g.relabel(perm)), tuple(perm)


def canonical_key(g: Graph) -> str:
    return canonical_form(g)[0]


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_form(g)[1])


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_key(g) == canonical_key(h)


def find_isomorphism(g: Graph, h: Graph) -> tuple[int, ...] | None:
    """A map ``phi`` with ``uv in E(g) <=> phi[u]phi[v] in E(h)``, if one exists."""
    if not are_isomorphic(g, h):
        return None
    pg = canonical_form(g)[1]
    ph = canonical_form(h)[1]
    inv_h = [0] * h.n
    for v, p in enumerate(ph):
        inv_h[p] = v
    return tuple(inv_h[pg[v]] for v in range(g.n))


def contains_induced(g: Graph, h: Graph) -> bool:
    if h.n > g.n:
        return False
    key = canonical_key(h)
    hdeg = sorted(h.degrees())
    hm = h.m
    for sub in combinations(range(g.n), h.n):
        mask = 0
        for v in sub:
            mask |= 1 << v
        degs = sorted((g.adj[v] & mask).bit_count() for v in sub)
        if degs != hdeg or sum(degs) != 2 * hm:
            continue
        if canonical_key(g.induced(mask)) == key:
            return True
    return False
