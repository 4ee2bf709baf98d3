"""Exact maximum nullity by a chain of reductions, and the census built on it.

``compute_M`` keeps lower and upper bounds on ``M(G)`` in a :class:`BoundLedger`
and applies the stages below in order, stopping as soon as the bounds meet.

====  ==================  ====================================================
 0    base                ``n <= 6`` gives ``M = Z``
 1    bounds              ``kappa <= M <= Z``
 2    mr<=2               no induced P4, campstool or dart gives ``mr <= 2``;
                          otherwise ``M <= n - 3``
 3    dominating          ``mr(G) = mr(G - v)`` for a dominating ``v`` with
                          ``G - v`` connected
 4    cut-vertex          cut-vertex formula, every split
 5    2-separation        2-separation formula, every separation
 6    kappa-Z             ``kappa = Z``
 7    twins               diagonal certificate on ``G - w`` for twins ``v, w``
 8    partial-3-path      3-connected with ``Z = 4`` gives ``M = 4``
 9    zhat                ``M <= Zhat``
10    petersen-minor      a minor in the small Petersen family gives ``M >= 5``
11    lifting             witnesses lifted from stored ``G - v`` witnesses
12    clique-cover        greedy clique cover matrix
13    gram-search         rank-3 Lorentz Gram matrix
====  ==================  ====================================================

Every recursive call is on a graph with fewer vertices.  In the 2-separation
formula the identified graphs are read as multigraphs: an edge doubled by the
identification is a sum of two free entries, so it may be present or absent,
and ``M`` of the multigraph is the maximum over those choices.  The same holds
for ``H_i`` when ``G_i`` already contains ``r1r2``.
"""

from __future__ import annotations

import csv
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator

from . import catalog
from .enumerate import enumerate_connected
from .forcing import diag_certificate, psd_zero_forcing_number, zero_forcing_number, zhat
from .graph import (
    Graph,
    GraphError,
    components,
    cut_vertices,
    derived_separation_graphs,
    dominating_vertices,
    is_connected,
    iter_bits,
    split_at_cut_vertex,
    twins,
    two_separations,
    vertex_connectivity,
)
from .graph6 import encode
from .iso import canonical_key
from .linalg import SymRatMatrix, rank
from .minors import has_minor
from .structure import mr_le_2, three_connected_z4_rule
from .witness import (
    VectorRep,
    WitnessRecord,
    WitnessStore,
    border_plus_two,
    clique_cover_witness,
    gram_witness,
    greedy_clique_cover,
    lift_generic,
    lift_plus_one,
    search_gram_witness,
    search_rank3_witness,
)

log = logging.getLogger(__name__)

STAGES = (
    "base",
    "bounds",
    "mr<=2",
    "dominating",
    "cut-vertex",
    "2-separation",
    "kappa-Z",
    "twins",
    "partial-3-path",
    "zhat",
    "petersen-minor",
    "stored-witness",
    "lifting",
    "clique-cover",
    "gram-search",
)
GRAM_BOUNDS = (4, 6)


class PipelineError(RuntimeError):
    pass


class UnresolvedError(PipelineError):
    def __init__(self, graph6: str, ledger: BoundLedger) -> None:
        super().__init__(f"{graph6}: unresolved with {ledger.lower} <= M <= {ledger.upper}")
        self.graph6 = graph6
        self.ledger = ledger


@dataclass
class BoundLedger:
    lower: int
    upper: int
    provenance: list[tuple[str, str, int]] = field(default_factory=list)
    stage: str | None = None

    @property
    def resolved(self) -> bool:
        return self.lower == self.upper

    def _check(self, tag: str) -> None:
        if self.lower > self.upper:
            raise PipelineError(f"bounds crossed at {tag}: {self.lower} > {self.upper}")
        if self.resolved and self.stage is None:
            self.stage = tag

    def raise_lower(self, value: int, tag: str) -> None:
        if value > self.lower:
            self.lower = value
            self.provenance.append((tag, "lower", value))
            self._check(tag)

    def cut_upper(self, value: int, tag: str) -> None:
        if value < self.upper:
            self.upper = value
            self.provenance.append((tag, "upper", value))
            self._check(tag)

    def exact(self, value: int, tag: str) -> None:
        if not self.lower <= value <= self.upper:
            raise PipelineError(f"{tag} gives M = {value} outside [{self.lower}, {self.upper}]")
        self.provenance.append((tag, "exact", value))
        self.lower = self.upper = value
        self._check(tag)

    def as_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "stage": self.stage,
            "provenance": [list(p) for p in self.provenance],
        }


def _block_diagonal(g: Graph, parts: list[tuple[int, SymRatMatrix]]) -> SymRatMatrix:
    rows = [[Fraction(0)] * g.n for _ in range(g.n)]
    for mask, a in parts:
        idx = list(iter_bits(mask))
        for i, oi in enumerate(idx):
            for j, oj in enumerate(idx):
                rows[oi][oj] = a.rows[i][j]
    return SymRatMatrix(rows)


class Pipeline:
    """Stateful driver: memoizes ``M`` by canonical key and owns a witness store."""

    def __init__(self, store: WitnessStore | None = None, use_witnesses: bool = True) -> None:
        self.store = store if store is not None else WitnessStore()
        self.use_witnesses = use_witnesses
        self._memo: dict[str, tuple[int, BoundLedger]] = {}
        self._z: dict[str, tuple[int, int]] = {}

    # helpers

    def z(self, g: Graph) -> int:
        key = canonical_key(g)
        if key not in self._z:
            self._z[key] = zero_forcing_number(g)
        return self._z[key][0]

    def m_any(self, g: Graph, bound: int) -> int:
        """``M`` of a possibly disconnected graph on fewer than ``bound`` vertices."""
        if g.n >= bound:
            raise PipelineError(f"recursion on {g.n} vertices from a {bound}-vertex graph")
        total = 0
        for comp in components(g):
            total += self.compute(g.induced(comp))[0]
        return total

    def m_multi(self, g: Graph, doubled: tuple[tuple[int, int], ...], bound: int) -> int:
        best = 0
        for r in range(len(doubled) + 1):
            for drop in combinations(doubled, r):
                h = g
                for u, v in drop:
                    h = h.remove_edge(u, v)
                best = max(best, self.m_any(h, bound))
        return best

    def witness_for(self, g: Graph) -> SymRatMatrix | None:
        """Stored witness, assembled blockwise over the components."""
        if g.n == 0:
            return SymRatMatrix([])
        parts = []
        for comp in components(g):
            a = self.store.get(g.induced(comp))
            if a is None:
                return None
            parts.append((comp, a))
        if len(parts) == 1:
            return parts[0][1]
        return _block_diagonal(g, parts)

    # formulas

    def cut_vertex_value(self, g: Graph, v: int) -> list[int]:
        out = []
        for s in split_at_cut_vertex(g, v):
            a = self.m_any(s.g1, g.n) + self.m_any(s.g2, g.n)
            b = self.m_any(s.g1.delete_vertex(s.cut1), g.n) + self.m_any(
                s.g2.delete_vertex(s.cut2), g.n
            )
            out.append(max(a, b) - 1)
        return out

    def two_separation_values(self, g: Graph) -> list[int]:
        out = []
        n = g.n
        for sep in two_separations(g):
            d = derived_separation_graphs(sep)
            terms = [
                self.m_any(d.g1, n) + self.m_any(d.g2, n),
                self.m_multi(d.h1, d.h1_doubled, n) + self.m_multi(d.h2, d.h2_doubled, n),
                self.m_multi(d.bar1, d.bar1_doubled, n) + self.m_multi(d.bar2, d.bar2_doubled, n),
                self.m_any(d.g1_minus_r1, n) + self.m_any(d.g2_minus_r1, n),
                self.m_any(d.g1_minus_r2, n) + self.m_any(d.g2_minus_r2, n),
                self.m_any(d.g1_minus_r, n) + self.m_any(d.g2_minus_r, n),
            ]
            out.append(max(terms) - 2)
        return out

    # driver

    def compute(self, g: Graph) -> tuple[int, BoundLedger]:
        if not is_connected(g) or g.n == 0:
            raise PipelineError("compute_M needs a connected graph with at least one vertex")
        if g.n > 8:
            raise PipelineError(f"compute_M is limited to eight vertices, got {g.n}")
        key = canonical_key(g)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        ledger = self._run(g)
        if not ledger.resolved:
            raise UnresolvedError(encode(g), ledger)
        self._memo[key] = (ledger.lower, ledger)
        return ledger.lower, ledger

    def _run(self, g: Graph) -> BoundLedger:
        n = g.n
        z = self.z(g)
        led = BoundLedger(1, n)
        led.cut_upper(z, "bounds")
        if n <= 6:
            led.exact(z, "base")
            return led
        kappa = vertex_connectivity(g)
        led.raise_lower(kappa, "bounds")
        if led.resolved:
            led.stage = "kappa-Z"
            return led

        if n <= 8:
            if g.is_complete():
                led.exact(n - 1, "mr<=2")
                return led
            if mr_le_2(g):
                led.exact(n - 2, "mr<=2")
                return led
            led.cut_upper(n - 3, "mr<=2")
            if led.resolved:
                return led

        for v in iter_bits(dominating_vertices(g)):
            h = g.delete_vertex(v)
            if is_connected(h):
                led.exact(self.compute(h)[0] + 1, "dominating")
                return led

        cuts = cut_vertices(g)
        if cuts:
            values = set()
            for v in iter_bits(cuts):
                values.update(self.cut_vertex_value(g, v))
            if len(values) != 1:
                raise PipelineError(f"cut-vertex formula disagrees across splits: {sorted(values)}")
            led.exact(values.pop(), "cut-vertex")
            return led

        values = set(self.two_separation_values(g))
        if values:
            if len(values) != 1:
                raise PipelineError(f"2-separation formula disagrees: {sorted(values)}")
            led.exact(values.pop(), "2-separation")
            return led

        if kappa == z:
            led.exact(z, "kappa-Z")
            return led

        for v, w, adjacent in twins(g):
            h = g.delete_vertex(w)
            if not is_connected(h):
                continue
            mh = self.compute(h)[0]
            vh = v if v < w else v - 1
            cert = diag_certificate(h, vh, mh)
            if cert == "both":
                raise PipelineError("diagonal certificates contradict each other")
            if (not adjacent and cert == "forced-zero") or (adjacent and cert == "forced-nonzero"):
                led.exact(mh + 1, "twins")
                return led

        rule = three_connected_z4_rule(g, z=z, kappa=kappa)
        if rule is not None:
            led.exact(rule, "partial-3-path")
            return led

        led.cut_upper(zhat(g, z), "zhat")
        if led.resolved:
            return led

        if z == 5 and led.lower < 5:
            small = [catalog.get(name) for name in catalog.PETERSEN_SMALL]
            if any(has_minor(g, p) for p in small):
                led.raise_lower(5, "petersen-minor")
                if led.resolved:
                    return led

        if self.use_witnesses:
            self._witness_stages(g, led)
        return led

    def _record(self, g: Graph, a: SymRatMatrix, source: str, led: BoundLedger, tag: str) -> None:
        self.store.put(g, a, source)
        led.raise_lower(g.n - rank(a), tag)

    def _witness_stages(self, g: Graph, led: BoundLedger) -> None:
        n = g.n
        own = self.store.get(g)
        if own is not None:
            led.raise_lower(n - rank(own), "stored-witness")
            if led.resolved:
                return
        for v in range(n):
            base = self.witness_for(g.delete_vertex(v))
            if base is None:
                continue
            b = lift_generic(base, g, v)
            if b is not None and n - rank(b) > led.lower:
                self._record(g, b, "lifted", led, "lifting")
                if led.resolved:
                    return
        a = clique_cover_witness(g, greedy_clique_cover(g))
        if a is not None and n - rank(a) > led.lower:
            self._record(g, a, "clique-cover", led, "clique-cover")
            if led.resolved:
                return
        if led.lower < n - 3 <= led.upper:
            for bound in GRAM_BOUNDS:
                rep = search_rank3_witness(g, bound)
                if rep is not None:
                    self._record(g, gram_witness(rep, g), "gram-search", led, "gram-search")
                    break


_default: Pipeline | None = None


def default_pipeline() -> Pipeline:
    global _default
    if _default is None:
        _default = Pipeline()
    return _default


def compute_M(g: Graph, pipeline: Pipeline | None = None) -> tuple[int, BoundLedger]:
    return (pipeline or default_pipeline()).compute(g)


def mr(g: Graph, pipeline: Pipeline | None = None) -> int:
    return g.n - compute_M(g, pipeline)[0]


# witness seeding


def construct_witness(p: Pipeline, g: Graph, target_rank: int) -> tuple[SymRatMatrix, str] | None:
    """Some matrix in ``S(g)`` of rank ``target_rank``, built from smaller stored witnesses."""
    n = g.n
    if n == 1:
        return SymRatMatrix([[0]]), "verified-input"
    best: tuple[SymRatMatrix, str] | None = None
    for v in range(n):
        base = p.witness_for(g.delete_vertex(v))
        if base is None:
            continue
        r = rank(base)
        if r == target_rank:
            b = lift_generic(base, g, v)
            if b is not None:
                return b, "lifted"
        elif r + 1 == target_rank:
            b = lift_plus_one(base, g, v)
            if b is not None and rank(b) == target_rank:
                return b, "bordered"
        elif r + 2 == target_rank:
            b = border_plus_two(base, g, v)
            if rank(b) == target_rank:
                return b, "bordered"
        if best is None or rank(best[0]) > r + 2:
            best = border_plus_two(base, g, v), "bordered"
    a = clique_cover_witness(g, greedy_clique_cover(g))
    if a is not None and rank(a) == target_rank:
        return a, "clique-cover"
    for rep in _gram_attempts(g, target_rank):
        a = gram_witness(rep, g)
        if rank(a) == target_rank:
            return a, "gram-search"
    return best


def _gram_attempts(g: Graph, r: int) -> Iterator[VectorRep]:
    """Gram searches in dimension ``r`` over every signature up to sign, small boxes first."""
    if not 1 <= r <= 4:
        return
    sigs = [(1,) * p + (-1,) * (r - p) for p in range(r, (r - 1) // 2, -1)]
    for bound in (1, 2) if r <= 3 else (1,):
        for sig in sigs:
            rep = search_gram_witness(g, sig, bound)
            if rep is not None:
                yield rep


@dataclass
class LayerReport:
    n: int
    graphs: int
    optimal: int
    missing: list[str]

    @property
    def coverage(self) -> float:
        return self.optimal / self.graphs if self.graphs else 1.0


def seed_witness_layers(
    max_n: int, pipeline: Pipeline | None = None, source8: str | Path | None = None
) -> list[LayerReport]:
    """Bottom-up: store a witness of rank ``mr(G)`` for every connected graph up to ``max_n``."""
    p = pipeline or default_pipeline()
    if max_n > 8:
        raise PipelineError("seeding stops at eight vertices")
    reports = []
    for n in range(1, max_n + 1):
        graphs = enumerate_connected(n, source8 if n == 8 else None)
        good = 0
        missing = []
        count = 0
        for g in graphs:
            count += 1
            target = n - p.compute(g)[0]
            if p.store.rank_of(g) == target:
                good += 1
                continue
            found = construct_witness(p, g, target)
            if found is not None:
                p.store.put(g, *found)
            if p.store.rank_of(g) == target:
                good += 1
            else:
                missing.append(encode(g))
        reports.append(LayerReport(n, count, good, missing))
        log.info("layer %d: %d/%d optimal witnesses", n, good, count)
    return reports


# census


@dataclass
class CensusRecord:
    graph6: str
    n: int
    Z: int | None
    M: int | None
    mr: int | None
    zhat: int | None
    zplus: int | None
    exceptional: bool
    stage: str | None
    error: str | None = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "graph6": self.graph6,
                "n": self.n,
                "Z": self.Z,
                "M": self.M,
                "mr": self.mr,
                "zhat": self.zhat,
                "zplus": self.zplus,
                "exceptional": self.exceptional,
                "stage": self.stage,
                "error": self.error,
            }
        )


@dataclass
class StageReport:
    total: int = 0
    counts: Counter = field(default_factory=Counter)
    unresolved: list[str] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    @property
    def exceptional(self) -> int:
        return self.counts.get("_exceptional", 0)

    def stage_counts(self) -> dict[str, int]:
        return {s: self.counts.get(s, 0) for s in STAGES}

    def summary(self) -> str:
        return f"{self.total} processed, {self.exceptional} exceptional"


def census_one(
    p: Pipeline, g: Graph, with_zhat: bool = False, with_zplus: bool = False
) -> CensusRecord:
    g6 = encode(g)
    if not is_connected(g):
        return CensusRecord(g6, g.n, None, None, None, None, None, False, None, "disconnected")
    m, led = p.compute(g)
    z = p.z(g)
    exceptional = m < z
    zh = zhat(g, z) if (with_zhat or exceptional) else None
    zp = psd_zero_forcing_number(g) if with_zplus else None
    return CensusRecord(g6, g.n, z, m, g.n - m, zh, zp, exceptional, led.stage)


_worker: tuple[Pipeline, bool, bool] | None = None


def _init_worker(records: list[WitnessRecord], with_zhat: bool, with_zplus: bool) -> None:
    global _worker
    store = WitnessStore()
    for rec in records:
        store.put_record(rec)
    store.journal.clear()
    _worker = (Pipeline(store), with_zhat, with_zplus)


def _work(g6: str) -> tuple[CensusRecord, list[WitnessRecord]]:
    from .graph6 import decode

    assert _worker is not None
    p, with_zhat, with_zplus = _worker
    rec = _census_safe(p, decode(g6), with_zhat, with_zplus)
    found = list(p.store.journal)
    p.store.journal.clear()
    return rec, found


def _census_safe(p: Pipeline, g: Graph, with_zhat: bool, with_zplus: bool) -> CensusRecord:
    try:
        return census_one(p, g, with_zhat, with_zplus)
    except UnresolvedError as exc:
        return CensusRecord(exc.graph6, g.n, p.z(g), None, None, None, None, False, None, "unresolved")
    except (PipelineError, GraphError) as exc:
        log.error("%s: %s", encode(g), exc)
        return CensusRecord(encode(g), g.n, None, None, None, None, None, False, None, str(exc))


def census(
    graphs: Iterable[Graph],
    pipeline: Pipeline | None = None,
    with_zhat: bool = False,
    with_zplus: bool = False,
    jobs: int = 1,
    seed: bool = True,
    progress: bool = False,
) -> tuple[list[CensusRecord], StageReport]:
    """One record per distinct input graph, in input order.

    With ``seed`` the witness store is first filled bottom-up to one below the
    largest input order, which the lifting stage relies on.
    """
    p = pipeline or default_pipeline()
    todo: list[Graph] = []
    seen: set[str] = set()
    for g in graphs:
        if is_connected(g) and g.n:
            key = canonical_key(g)
            if key in seen:
                continue
            seen.add(key)
        todo.append(g)
    top = max((g.n for g in todo), default=0)
    if seed and top > 1:
        seed_witness_layers(min(top - 1, 7), p)

    if jobs > 1 and len(todo) > 1:
        import multiprocessing

        with multiprocessing.Pool(
            jobs, _init_worker, (p.store.records(), with_zhat, with_zplus)
        ) as pool:
            records = []
            for rec, found in pool.imap(_work, [encode(g) for g in todo], chunksize=64):
                for w in found:
                    p.store.put_record(w)
                records.append(rec)
    else:
        records = [_census_safe(p, g, with_zhat, with_zplus) for g in todo]

    report = StageReport()
    for rec in records:
        report.total += 1
        if rec.error == "unresolved":
            report.unresolved.append(rec.graph6)
        elif rec.error:
            report.errors.append(rec.graph6)
        else:
            report.counts[rec.stage] += 1
            if rec.exceptional:
                report.counts["_exceptional"] += 1
        if progress and report.total % 1000 == 0:
            log.info("%d graphs processed", report.total)
    return records, report


def classify_exceptional(records: Iterable[CensusRecord]) -> dict[str, str]:
    """Map each exceptional record's graph6 to its catalog name ``E1`` .. ``E7``."""
    from .graph6 import decode

    out: dict[str, str] = {}
    for rec in records:
        if not rec.exceptional:
            continue
        name = catalog.lookup_key(canonical_key(decode(rec.graph6)))
        if name not in catalog.EXCEPTIONAL:
            raise PipelineError(f"exceptional graph {rec.graph6} is not in the catalog")
        if name in out.values():
            raise PipelineError(f"two exceptional records match {name}")
        out[rec.graph6] = name
    return out


def write_census(records: list[CensusRecord], report: StageReport, out: str | Path) -> tuple[Path, Path]:
    out = Path(out)
    with open(out, "w", encoding="ascii") as fh:
        for r in records:
            fh.write(r.to_json() + "\n")
    summary = out.with_name(out.stem + "_summary.csv")
    by_n: dict[int, list[CensusRecord]] = {}
    for r in records:
        by_n.setdefault(r.n, []).append(r)
    with open(summary, "w", newline="", encoding="ascii") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "count", "exceptional_count", *STAGES])
        for n in sorted(by_n):
            rs = by_n[n]
            stages = Counter(r.stage for r in rs)
            w.writerow([n, len(rs), sum(r.exceptional for r in rs), *(stages.get(s, 0) for s in STAGES)])
    return out, summary


__all__ = [
    "BoundLedger",
    "CensusRecord",
    "LayerReport",
    "Pipeline",
    "PipelineError",
    "StageReport",
    "UnresolvedError",
    "census",
    "census_one",
    "classify_exceptional",
    "compute_M",
    "construct_witness",
    "default_pipeline",
    "mr",
    "seed_witness_layers",
    "write_census",
]
