"""Minor containment for small graphs.

A minor on ``k`` vertices is a spanning subgraph of some graph reached from
``g`` by ``n - k`` vertex deletions or edge contractions, so the search shrinks
the vertex count first (memoized on canonical keys) and only then looks for
``h`` as a spanning subgraph.
"""

from __future__ import annotations

from functools import lru_cache

from .graph import Graph, identify_vertices
from .graph6 import encode
from .iso import canonical_graph, canonical_key


def contains_spanning(g: Graph, h: Graph) -> bool:
    """Whether ``h`` embeds in ``g`` as a (not necessarily induced) subgraph, ``n(h) == n(g)``."""
    if h.n != g.n or h.m > g.m:
        return False
    # the i-th largest degree of h cannot exceed the i-th largest of g
    hd = sorted(h.degrees(), reverse=True)
    gd = sorted(g.degrees(), reverse=True)
    if any(a > b for a, b in zip(hd, gd)):
        return False
    order = sorted(range(h.n), key=lambda v: -h.degree(v))
    phi = [-1] * h.n
    used = 0

    def place(i: int) -> bool:
        nonlocal used
        if i == len(order):
            return True
        u = order[i]
        need = h.degree(u)
        for x in range(g.n):
            if used >> x & 1 or g.degree(x) < need:
                continue
            if all(g.adj[x] >> phi[w] & 1 for w in h.neighbors(u) if phi[w] >= 0):
                phi[u] = x
                used |= 1 << x
                if place(i + 1):
                    return True
                used &= ~(1 << x)
                phi[u] = -1
        return False

    return place(0)


@lru_cache(maxsize=1 << 16)
def _minor(gkey: str, hkey: str) -> bool:
    from .graph6 import decode
    from .graph import MAX_ORDER

    g = decode(gkey, max_order=MAX_ORDER)
    h = decode(hkey, max_order=MAX_ORDER)
    if g.m < h.m or g.n < h.n:
        return False
    if g.n == h.n:
        return contains_spanning(g, h)
    children = set()
    for v in range(g.n):
        children.add(canonical_key(g.delete_vertex(v)))
    for u, v in g.edges():
        children.add(canonical_key(identify_vertices(g, u, v)))
    return any(_minor(c, hkey) for c in sorted(children))


def has_minor(g: Graph, h: Graph) -> bool:
    if h.n > g.n:
        return False
    if h.n == 0:
        return True
    return _minor(canonical_key(g), encode(canonical_graph(h)))
