"""Minimum rank witnesses: verification, construction and storage.

A witness for ``G`` is a matrix in ``S(G)``; its rank is an upper bound on the
minimum rank and hence its nullity a lower bound on the maximum nullity.

Lifting extends a witness ``A`` of ``G - v`` by ``B = P^T A P`` with
``P = [I | w]``, i.e. ``[[A, Aw], [w^T A, w^T A w]]`` with the new row and
column placed at index ``v``.  ``B`` has the rank of ``A`` and lies in ``S(G)``
exactly when ``Aw`` vanishes off ``N(v)`` and nowhere on ``N(v)``.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from pathlib import Path
from typing import Iterator, Sequence

from .graph import Graph, iter_bits
from .iso import canonical_form
from .linalg import (
    MatrixError,
    SymRatMatrix,
    congruence,
    in_pattern,
    matvec,
    nullspace_basis,
    rank,
    submatrix,
)

SOURCES = ("verified-input", "lifted", "clique-cover", "gram-search", "bordered")
LORENTZ = (1, 1, -1)


class WitnessError(ValueError):
    pass


def verify_witness(g: Graph, a: SymRatMatrix, claimed_nullity: int) -> bool:
    if a.n != g.n:
        return False
    return in_pattern(a, g) and g.n - rank(a) == claimed_nullity


def _bordered(a: SymRatMatrix, col: Sequence[Fraction], corner: Fraction, v: int) -> SymRatMatrix:
    n = a.n + 1
    old = [i for i in range(n) if i != v]
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i, oi in enumerate(old):
        for j, oj in enumerate(old):
            rows[oi][oj] = a.rows[i][j]
        rows[oi][v] = rows[v][oi] = col[i]
    rows[v][v] = corner
    return SymRatMatrix(rows)


def _side(g: Graph, v: int) -> tuple[list[int], list[int]]:
    """Neighbor and non-neighbor positions of ``v`` in the labeling of ``G - v``."""
    nbr, non = [], []
    for u in range(g.n):
        if u == v:
            continue
        (nbr if g.adj[v] >> u & 1 else non).append(u if u < v else u - 1)
    return nbr, non


def lift_with(a: SymRatMatrix, g: Graph, v: int, w: Sequence) -> SymRatMatrix | None:
    """The lifting of ``a`` by ``w``, if it lies in ``S(g)``."""
    w = [Fraction(x) for x in w]
    aw = matvec(a.rows, w)
    corner = sum((x * y for x, y in zip(w, aw)), Fraction(0))
    b = _bordered(a, aw, corner, v)
    ok = in_pattern(b, g)
    nbr, non = _side(g, v)
    predicted = all(aw[i] == 0 for i in non) and all(aw[i] != 0 for i in nbr)
    if ok != predicted:
        raise AssertionError("lifting pattern disagrees with the null-vector conditions")
    return b if ok else None


def _check_base(a: SymRatMatrix, g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise WitnessError(f"vertex {v} out of range")
    if a.n != g.n - 1 or not in_pattern(a, g.delete_vertex(v)):
        raise WitnessError(f"matrix is not in S(G - {v})")


def lift_basis(a: SymRatMatrix, g: Graph, v: int) -> list[list[Fraction]]:
    """Basis of the null space of ``A[L_v \\ N(v), L_v]``."""
    _, non = _side(g, v)
    return nullspace_basis(submatrix(a.rows, non, range(a.n)), ncols=a.n)


def lift_vectors(basis: list[list[Fraction]]) -> Iterator[list[Fraction]]:
    """Naive sum, then single basis vectors, then pairwise sums."""
    if not basis:
        return
    size = len(basis[0])
    yield [sum((x[i] for x in basis), Fraction(0)) for i in range(size)]
    if len(basis) > 1:
        yield from basis
        for x, y in combinations(basis, 2):
            yield [p + q for p, q in zip(x, y)]


def lift(a: SymRatMatrix, g: Graph, v: int) -> SymRatMatrix | None:
    _check_base(a, g, v)
    basis = lift_basis(a, g, v)
    for w in lift_vectors(basis):
        b = lift_with(a, g, v, w)
        if b is not None:
            return b
    if not basis and not g.adj[v]:
        # isolated vertex: the zero border keeps the rank
        return _bordered(a, [Fraction(0)] * a.n, Fraction(0), v)
    return None


def _generic_combos(basis, tries: int, seed: int) -> Iterator[list[Fraction]]:
    import random

    rng = random.Random(seed)
    size = len(basis[0])
    for _ in range(tries):
        cs = [rng.choice((-3, -2, -1, 1, 2, 3)) for _ in basis]
        yield [sum((c * x[i] for c, x in zip(cs, basis)), Fraction(0)) for i in range(size)]


def lift_generic(a: SymRatMatrix, g: Graph, v: int, tries: int = 12) -> SymRatMatrix | None:
    """Lifting with the fixed fallbacks followed by random integer combinations."""
    b = lift(a, g, v)
    if b is not None or tries <= 0:
        return b
    basis = lift_basis(a, g, v)
    if len(basis) < 2:
        return None
    for w in _generic_combos(basis, tries, seed=v):
        b = lift_with(a, g, v, w)
        if b is not None:
            return b
    return None


def lift_plus_one(a: SymRatMatrix, g: Graph, v: int, tries: int = 6) -> SymRatMatrix | None:
    """A matrix in ``S(g)`` of rank at most ``rank(a) + 1``.

    Adds ``y y^T`` to a lifting, with ``y`` the unit vector at some ``q`` plus
    a border entry ``tau``.  This only perturbs the diagonal at ``q`` and
    relaxes the null-vector conditions at ``q``, which ``tau`` then repairs.
    """
    _check_base(a, g, v)
    nbr, non = _side(g, v)
    for q in range(a.n):
        rows = [i for i in non if i != q]
        basis = nullspace_basis(submatrix(a.rows, rows, range(a.n)), ncols=a.n)
        if not basis:
            continue
        cands = list(lift_vectors(basis))
        if len(basis) > 1:
            cands += list(_generic_combos(basis, tries, seed=q))
        for w in cands:
            aw = matvec(a.rows, w)
            if any(aw[i] == 0 for i in nbr if i != q):
                continue
            if q in nbr:
                tau = Fraction(1) if aw[q] != -1 else Fraction(2)
            else:
                tau = -aw[q]
            col = list(aw)
            col[q] += tau
            corner = sum((x * y for x, y in zip(w, aw)), Fraction(0)) + tau * tau
            top = a.tolist()
            top[q][q] += 1
            b = _bordered(SymRatMatrix(top), col, corner, v)
            if in_pattern(b, g):
                return b
    return None


def border_plus_two(a: SymRatMatrix, g: Graph, v: int) -> SymRatMatrix:
    """``[[A, b], [b^T, 0]]`` with ``b`` the neighbor indicator; rank at most ``rank(a) + 2``."""
    _check_base(a, g, v)
    nbr, _ = _side(g, v)
    col = [Fraction(int(i in nbr)) for i in range(a.n)]
    return _bordered(a, col, Fraction(0), v)


# clique covers


def clique_sum(n: int, sets: Sequence[Sequence[int]], coeffs: Sequence) -> SymRatMatrix:
    """``sum_i a_i 1_{V_i} 1_{V_i}^T``."""
    if len(sets) != len(coeffs):
        raise WitnessError("one coefficient per set is required")
    rows = [[Fraction(0)] * n for _ in range(n)]
    for s, c in zip(sets, coeffs):
        c = Fraction(c)
        for i in s:
            for j in s:
                rows[i][j] += c
    return SymRatMatrix(rows)


def _check_cover(g: Graph, cliques: Sequence[Sequence[int]]) -> None:
    covered = set()
    for q in cliques:
        for u, v in combinations(sorted(q), 2):
            if not g.has_edge(u, v):
                raise WitnessError(f"{sorted(q)} is not a clique ({u}{v} missing)")
            covered.add((u, v))
    missing = [e for e in g.edges() if e not in covered]
    if missing:
        raise WitnessError(f"edges not covered: {missing}")


def coefficient_attempts(m: int, attempts: int = 8) -> Iterator[list[Fraction]]:
    import random

    yield [Fraction(i + 1) for i in range(m)]
    yield [Fraction((i // 2 + 1) * (1 if i % 2 == 0 else -1)) for i in range(m)]
    rng = random.Random(m)
    for _ in range(attempts - 2):
        yield [Fraction(rng.choice((-1, 1)) * rng.randint(1, 9), rng.randint(1, 4)) for _ in range(m)]


def clique_cover_witness(
    g: Graph, cliques: Sequence[Sequence[int]], coeffs: Sequence | None = None
) -> SymRatMatrix | None:
    _check_cover(g, cliques)
    if coeffs is not None:
        if any(Fraction(c) == 0 for c in coeffs):
            raise WitnessError("clique coefficients must be nonzero")
        a = clique_sum(g.n, cliques, coeffs)
        return a if in_pattern(a, g) else None
    for cs in coefficient_attempts(len(cliques)):
        a = clique_sum(g.n, cliques, cs)
        if in_pattern(a, g):
            return a
    return None


def greedy_clique_cover(g: Graph) -> list[list[int]]:
    """Grow each clique from an uncovered edge, preferring vertices that cover most."""
    uncovered = set(g.edges())
    cover = []
    while uncovered:
        u, v = min(uncovered)
        q = [u, v]
        common = g.adj[u] & g.adj[v]
        while common:
            best = max(
                iter_bits(common),
                key=lambda x: (sum((min(x, y), max(x, y)) in uncovered for y in q), -x),
            )
            q.append(best)
            common &= g.adj[best]
        q.sort()
        cover.append(q)
        for a, b in combinations(q, 2):
            uncovered.discard((a, b))
    for v in range(g.n):
        if not g.adj[v]:
            cover.append([v])
    return cover


# vector representations


@dataclass(frozen=True)
class VectorRep:
    """Integer columns ``m_v``; the Gram form is ``diag(signature)``, Lorentz by default."""

    columns: tuple[tuple[int, ...], ...]
    signature: tuple[int, ...] = LORENTZ

    @property
    def matrix(self) -> list[list[int]]:
        return [[c[i] for c in self.columns] for i in range(len(self.signature))]


def _form(x: Sequence[int], y: Sequence[int], sig: Sequence[int] = LORENTZ) -> int:
    return sum(s * a * b for s, a, b in zip(sig, x, y))


def gram_witness(rep: VectorRep, g: Graph | None = None) -> SymRatMatrix:
    if rep.columns:
        a = congruence(rep.matrix, SymRatMatrix.diag(rep.signature))
    else:
        a = SymRatMatrix([])
    if g is not None:
        if a.n != g.n:
            raise WitnessError(f"{a.n} vectors for a graph on {g.n} vertices")
        bad = [
            (i, j)
            for i in range(g.n)
            for j in range(i + 1, g.n)
            if (a.rows[i][j] != 0) != g.has_edge(i, j)
        ]
        if bad:
            raise WitnessError(f"orthogonality pattern differs from the graph at {bad}")
    return a


def degeneracy_order(g: Graph) -> list[int]:
    """Smallest-last order: repeatedly strip a minimum degree vertex, then reverse."""
    left = g.full
    removed = []
    while left:
        v = min(iter_bits(left), key=lambda x: ((g.adj[x] & left).bit_count(), x))
        removed.append(v)
        left &= ~(1 << v)
    return removed[::-1]


def _primitive_vectors(bound: int, dim: int = 3) -> list[tuple[int, ...]]:
    out = []
    for x in product(range(-bound, bound + 1), repeat=dim):
        nz = [c for c in x if c]
        if not nz or nz[0] < 0 or gcd(*nz) != 1:
            continue
        out.append(x)
    return out


def search_rank3_witness(g: Graph, entry_bound: int = 4) -> VectorRep | None:
    """Integer vectors in ``[-b, b]^3`` realizing ``g`` as a Lorentz orthogonality graph."""
    return search_gram_witness(g, LORENTZ, entry_bound)


def search_gram_witness(g: Graph, signature: Sequence[int], entry_bound: int) -> VectorRep | None:
    """Integer vectors in ``[-b, b]^d`` whose ``diag(signature)``-orthogonality graph is ``g``.

    Vectors are taken primitive and up to sign, which loses nothing since
    rescaling a vector rescales a row and column of the Gram matrix.
    """
    signature = tuple(signature)
    if g.n == 0:
        return VectorRep((), signature)
    vecs = _primitive_vectors(entry_bound, len(signature))
    if not vecs:
        return None
    nv = len(vecs)
    ortho = [0] * nv
    for i, x in enumerate(vecs):
        m = 0
        for j, y in enumerate(vecs):
            if _form(x, y, signature) == 0:
                m |= 1 << j
        ortho[i] = m
    everything = (1 << nv) - 1
    order = degeneracy_order(g)
    chosen: dict[int, int] = {}

    def candidates(v: int) -> int:
        c = everything
        for u, idx in chosen.items():
            if g.adj[v] >> u & 1:
                c &= ~ortho[idx]
            else:
                c &= ortho[idx]
        return c

    def dfs(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        c = candidates(v)
        while c:
            low = c & -c
            idx = low.bit_length() - 1
            c ^= low
            chosen[v] = idx
            if dfs(pos + 1):
                return True
            del chosen[v]
        return False

    if not dfs(0):
        return None
    return VectorRep(tuple(vecs[chosen[v]] for v in range(g.n)), signature)


# persistent store


@dataclass(frozen=True)
class WitnessRecord:
    key: str
    n: int
    rank: int
    matrix: SymRatMatrix
    source: str

    def to_json(self) -> str:
        mat = [[[str(x.numerator), str(x.denominator)] for x in r] for r in self.matrix.rows]
        return json.dumps(
            {"key": self.key, "n": self.n, "rank": self.rank, "matrix": mat, "source": self.source}
        )

    @classmethod
    def from_json(cls, line: str) -> WitnessRecord:
        d = json.loads(line)
        mat = SymRatMatrix([[Fraction(int(p), int(q)) for p, q in r] for r in d["matrix"]])
        return cls(d["key"], int(d["n"]), int(d["rank"]), mat, d["source"])


def default_store_path() -> Path:
    return Path(os.environ.get("MINRANK_WITNESS_STORE", "witnesses.jsonl"))


def _graph_of_key(key: str) -> Graph:
    from .graph6 import decode
    from .graph import MAX_ORDER

    return decode(key, max_order=MAX_ORDER)


class WitnessStore:
    """Best known witness per canonical key; optionally backed by a JSONL file.

    Matrices are kept in the canonical labeling of their graph and translated
    on the way in and out.  Writes are serialized by a lock, and every record
    that improves the store is also appended to ``journal``.
    """

    def __init__(self, path: str | Path | None = None) -> None:
        self.path = Path(path) if path is not None else None
        self._records: dict[str, WitnessRecord] = {}
        self._lock = threading.Lock()
        self.journal: list[WitnessRecord] = []
        if self.path is not None and self.path.exists():
            with open(self.path, encoding="ascii") as fh:
                for lineno, line in enumerate(fh, 1):
                    if not line.strip():
                        continue
                    rec = WitnessRecord.from_json(line)
                    g = _graph_of_key(rec.key)
                    if not in_pattern(rec.matrix, g) or rank(rec.matrix) != rec.rank:
                        raise WitnessError(f"{self.path}:{lineno}: stored witness fails verification")
                    old = self._records.get(rec.key)
                    if old is None or rec.rank < old.rank:
                        self._records[rec.key] = rec

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, key: str) -> bool:
        return key in self._records

    def snapshot(self) -> WitnessStore:
        """In-memory copy, for worker processes that must not touch the file."""
        out = WitnessStore()
        out._records = dict(self._records)
        return out

    def keys(self) -> set[str]:
        return set(self._records)

    def records(self) -> list[WitnessRecord]:
        return list(self._records.values())

    def get_record(self, key: str) -> WitnessRecord | None:
        return self._records.get(key)

    def put_record(self, rec: WitnessRecord) -> bool:
        g = _graph_of_key(rec.key)
        if not in_pattern(rec.matrix, g) or rank(rec.matrix) != rec.rank:
            raise WitnessError("record fails verification")
        return self._insert(rec)

    def _insert(self, rec: WitnessRecord) -> bool:
        with self._lock:
            old = self._records.get(rec.key)
            if old is not None and old.rank <= rec.rank:
                return False
            self._records[rec.key] = rec
            self.journal.append(rec)
            if self.path is not None:
                with open(self.path, "a", encoding="ascii") as fh:
                    fh.write(rec.to_json() + "\n")
            return True

    def put(self, g: Graph, a: SymRatMatrix, source: str) -> WitnessRecord:
        """Verify and store ``a`` for ``g``; returns the record now held for ``g``."""
        if source not in SOURCES:
            raise WitnessError(f"unknown source tag {source!r}")
        try:
            ok = in_pattern(a, g)
        except MatrixError:
            ok = False
        if not ok:
            raise WitnessError("matrix is not in S(G)")
        key, perm = canonical_form(g)
        rec = WitnessRecord(key, g.n, rank(a), a.permuted(perm), source)
        self._insert(rec)
        return self._records[key]

    def get(self, g: Graph) -> SymRatMatrix | None:
        key, perm = canonical_form(g)
        rec = self._records.get(key)
        if rec is None:
            return None
        inv = [0] * g.n
        for v, p in enumerate(perm):
            inv[p] = v
        return rec.matrix.permuted(inv)

    def rank_of(self, g: Graph) -> int | None:
        rec = self._records.get(canonical_form(g)[0])
        return None if rec is None else rec.rank

