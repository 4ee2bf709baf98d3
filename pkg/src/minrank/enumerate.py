"""Connected graphs up to isomorphism.

Every connected graph on ``n`` vertices has a non-cut vertex (a leaf of any
spanning tree), so it arises from a connected graph on ``n - 1`` vertices by
joining one new vertex to a nonempty neighbor set.  Generation augments each
order layer that way and keeps the first representative of each canonical key.
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator

from .graph import Graph, GraphError, is_connected
from .graph6 import read_file
from .iso import canonical_form

BUILTIN_LIMIT = 7


def augment_connected(layer: Iterable[Graph]) -> list[Graph]:
    """One representative per class of connected one-vertex extensions of ``layer``."""
    seen: dict[str, Graph] = {}
    for g in layer:
        for nbrs in range(1, 1 << g.n):
            key, perm = canonical_form(g.join_vertex(nbrs))
            if key not in seen:
                seen[key] = g.join_vertex(nbrs).relabel(perm)
    return [seen[k] for k in sorted(seen)]


@lru_cache(maxsize=None)
def _layer(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph.empty(1),)
    return tuple(augment_connected(_layer(n - 1)))


def enumerate_connected(n: int, source: str | Path | None = None) -> Iterator[Graph]:
    """Connected ``n``-vertex graphs, one per isomorphism class.

    Orders above seven are read from ``source`` (a graph6 file); its entries
    are checked for order and connectivity and deduplicated by canonical key.
    """
    if source is not None:
        yield from ingest(source, n)
        return
    if n < 1:
        raise GraphError("order must be at least 1")
    if n > BUILTIN_LIMIT:
        raise GraphError(
            f"built-in generation stops at n={BUILTIN_LIMIT}; supply a graph6 file "
            f"of connected {n}-vertex graphs (for example from 'minrank generate {n}')"
        )
    yield from _layer(n)


def generate_connected(n: int) -> list[Graph]:
    """Augmentation without the built-in cap; slow above eight vertices."""
    if n <= BUILTIN_LIMIT:
        return list(_layer(n))
    return augment_connected(generate_connected(n - 1))


def ingest(path: str | Path, n: int | None = None) -> Iterator[Graph]:
    seen: set[str] = set()
    for g in read_file(path):
        if n is not None and g.n != n:
            raise GraphError(f"{path}: expected order {n}, found {g.n}")
        if not is_connected(g):
            raise GraphError(f"{path}: disconnected graph in input")
        key = canonical_form(g)[0]
        if key in seen:
            continue
        seen.add(key)
        yield g
