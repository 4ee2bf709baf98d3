"""Built-in named graphs, loaded from the ``data/catalog.txt`` resource."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .graph import Graph, GraphError
from .iso import canonical_key

EXCEPTIONAL = ("E1", "E2", "E3", "E4", "E5", "E6", "E7")
MR2_OBSTRUCTIONS = ("P4", "campstool", "dart")
PETERSEN_FAMILY = ("PF_K6", "PF_Petersen", "PF_7a", "PF_8a", "PF_9", "PF_8b", "PF_7b")
# members with at most eight vertices
PETERSEN_SMALL = ("PF_K6", "PF_7a", "PF_8a", "PF_8b", "PF_7b")
ZPLUS_GRAPH6 = (
    "Gvd|TO",
    "GfF|tW",
    "GfD|tW",
    "GbD|tW",
    "GbD|t[",
    "Gvx|Ro",
    "Gfx|Ro",
    "GrxX[s",
    "GryW[k",
    "GrW[[k",
    "GvW[[k",
    "GrY[[k",
    "Gv][[k",
)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    graph: Graph
    key: str


def parse_line(line: str) -> tuple[str, Graph]:
    parts = line.split()
    if len(parts) not in (2, 3):
        raise GraphError(f"bad catalog line: {line!r}")
    name, n = parts[0], int(parts[1])
    edges = []
    if len(parts) == 3:
        for tok in parts[2].split(","):
            u, v = tok.split("-")
            edges.append((int(u), int(v)))
    return name, Graph.from_edges(n, edges)


@lru_cache(maxsize=1)
def load() -> tuple[CatalogEntry, ...]:
    text = resources.files("minrank").joinpath("data/catalog.txt").read_text()
    out = []
    seen: dict[str, str] = {}
    for raw in text.splitlines():
        raw = raw.strip()
        if not raw or raw.startswith("#"):
            continue
        name, g = parse_line(raw)
        key = canonical_key(g)
        if key in seen:
            raise GraphError(f"catalog entries {seen[key]} and {name} are isomorphic")
        seen[key] = name
        out.append(CatalogEntry(name, g, key))
    return tuple(out)


def get(name: str) -> Graph:
    for e in load():
        if e.name == name:
            return e.graph
    raise KeyError(name)


def names() -> list[str]:
    return [e.name for e in load()]


def lookup_key(key: str) -> str | None:
    for e in load():
        if e.key == key:
            return e.name
    return None
