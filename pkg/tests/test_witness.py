import json
import random
from fractions import Fraction
from itertools import product

import pytest

from minrank import catalog
from minrank.enumerate import enumerate_connected
from minrank.graph import Graph
from minrank.iso import canonical_key
from minrank.linalg import SymRatMatrix, in_pattern, inertia, rank
from minrank.witness import (
    LORENTZ,
    VectorRep,
    WitnessError,
    WitnessRecord,
    WitnessStore,
    border_plus_two,
    clique_cover_witness,
    clique_sum,
    degeneracy_order,
    gram_witness,
    greedy_clique_cover,
    lift,
    lift_basis,
    lift_generic,
    lift_plus_one,
    lift_with,
    search_gram_witness,
    search_rank3_witness,
    verify_witness,
)

HOUSE_BASE = SymRatMatrix([[0, 0, 1, 1], [0, 0, 1, 1], [1, 1, 0, 0], [1, 1, 0, 0]])
NOLIFT_BASE = SymRatMatrix([[1, 1, 1, 0], [1, 1, 1, 0], [1, 1, 2, 1], [0, 0, 1, 1]])
LIFT8_BASE = SymRatMatrix(
    [
        [1, -1, 0, 0, 0, 0, 2],
        [-1, 1, 0, 2, 0, 2, 0],
        [0, 0, 0, 2, 0, 2, 2],
        [0, 2, 2, 2, 2, 2, 0],
        [0, 0, 0, 2, 0, 2, 2],
        [0, 2, 2, 2, 2, 2, 0],
        [2, 0, 2, 0, 2, 0, 2],
    ]
)
GRAM_M = [[1, 2, 1, 1, 2, 0, 2, 0], [0, 1, 0, 1, 1, 1, -4, 0], [2, 0, 0, 1, 3, 0, 1, 1]]
GRAM_A = [
    [-3, 2, 1, -1, -4, 0, 0, -2],
    [2, 5, 2, 3, 5, 1, 0, 0],
    [1, 2, 1, 1, 2, 0, 2, 0],
    [-1, 3, 1, 1, 0, 1, -3, -1],
    [-4, 5, 2, 0, -4, 1, -3, -3],
    [0, 1, 0, 1, 1, 1, -4, 0],
    [0, 0, 2, -3, -3, -4, 19, -1],
    [-2, 0, 0, -1, -3, 0, -1, -1],
]
E_COVER = [[1, 2, 3, 4], [1, 2, 7], [2, 4, 5], [0, 1, 4, 6], [0, 2]]


def test_verify_witness():
    p3 = Graph.path(3)
    a = SymRatMatrix([[1, 1, 0], [1, 1, 1], [0, 1, 1]])
    assert verify_witness(p3, a, 0)
    b = SymRatMatrix([[1, 1, 0], [1, 2, 1], [0, 1, 1]])
    assert verify_witness(p3, b, 1)
    assert not verify_witness(p3, b, 2)
    assert not verify_witness(Graph.complete(3), b, 1)
    assert not verify_witness(Graph.path(4), b, 1)


def test_house_lift():
    g = catalog.get("house")
    basis = lift_basis(HOUSE_BASE, g, 4)
    assert basis == [[1, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    b = lift(HOUSE_BASE, g, 4)
    assert b.tolist() == [
        [0, 0, 1, 1, 2],
        [0, 0, 1, 1, 2],
        [1, 1, 0, 0, 0],
        [1, 1, 0, 0, 0],
        [2, 2, 0, 0, 0],
    ]
    assert rank(b) == 2 and in_pattern(b, g)


def test_lift_absent():
    g = catalog.get("nolift")
    assert len(lift_basis(NOLIFT_BASE, g, 4)) == 2
    assert lift(NOLIFT_BASE, g, 4) is None
    # every vector in the span fails, not just the fixed fallbacks
    basis = lift_basis(NOLIFT_BASE, g, 4)
    for s, t in product(range(-4, 5), repeat=2):
        w = [s * x + t * y for x, y in zip(*basis)]
        assert lift_with(NOLIFT_BASE, g, 4, w) is None
    up = lift_plus_one(NOLIFT_BASE, g, 4)
    assert up is not None and in_pattern(up, g) and rank(up) <= rank(NOLIFT_BASE) + 1


def test_lift8_border():
    g = catalog.get("lift8")
    b = lift(LIFT8_BASE, g, 6)
    assert [b[6, j] for j in range(8)] == [-6, 4, -2, 10, -2, 10, 14, 0]
    assert rank(b) == rank(LIFT8_BASE) == 3
    assert in_pattern(b, g)


def test_lift_rejects_bad_base():
    g = catalog.get("house")
    with pytest.raises(WitnessError):
        lift(SymRatMatrix.identity(4), g, 4)
    with pytest.raises(WitnessError):
        lift(HOUSE_BASE, g, 7)


def test_border_plus_two():
    g = catalog.get("nolift")
    b = border_plus_two(NOLIFT_BASE, g, 4)
    assert in_pattern(b, g) and rank(b) <= rank(NOLIFT_BASE) + 2


def test_lift_preserves_rank_on_stored_witnesses(seeded):
    p, _ = seeded
    rng = random.Random(12)
    recs = [r for r in p.store.records() if r.n >= 3]
    done = 0
    for rec in rng.sample(recs, min(200, len(recs))):
        from minrank.graph6 import decode

        g = decode(rec.key)
        for v in range(g.n):
            h = g.join_vertex(g.adj[v])
            b = lift_generic(rec.matrix, h, h.n - 1)
            if b is not None:
                assert in_pattern(b, h) and rank(b) == rec.rank
                done += 1
                break
    assert done > 100


def test_clique_cover_for_e7():
    g = catalog.get("E7")
    a = clique_cover_witness(g, E_COVER, [1, 2, 3, 4, 5])
    assert a is not None and rank(a) == 5
    assert a[0, 0] == 9 and a[1, 1] == 7 and a[2, 2] == 11 and a[7, 7] == 2


@pytest.mark.parametrize("i", range(2, 8))
def test_one_cover_serves_every_exceptional_graph(i):
    g = catalog.get(f"E{i}")
    for cs in product([-3, -2, -1, 1, 2, 3], repeat=5):
        a = clique_sum(8, E_COVER, cs)
        if in_pattern(a, g):
            assert rank(a) == 5
            return
    pytest.fail("no coefficients realize the pattern")


def test_clique_cover_complete_and_path():
    k5 = Graph.complete(5)
    a = clique_cover_witness(k5, [list(range(5))])
    assert rank(a) == 1
    p3 = Graph.path(3)
    b = clique_cover_witness(p3, [[0, 1], [1, 2]], [1, -1])
    assert b.tolist() == [[1, 1, 0], [1, 0, -1], [0, -1, -1]]
    with pytest.raises(WitnessError):
        clique_cover_witness(p3, [[0, 1, 2]])
    with pytest.raises(WitnessError):
        clique_cover_witness(p3, [[0, 1]])
    with pytest.raises(WitnessError):
        clique_cover_witness(p3, [[0, 1], [1, 2]], [1, 0])


def test_greedy_cover_is_valid():
    for n in range(2, 7):
        for g in enumerate_connected(n):
            cover = greedy_clique_cover(g)
            a = clique_cover_witness(g, cover)
            if a is not None:
                assert rank(a) <= len(cover)


def test_gram_example():
    g = catalog.get("gram_example")
    rep = VectorRep(tuple(zip(*GRAM_M)))
    a = gram_witness(rep, g)
    assert a.tolist() == GRAM_A
    assert rank(a) == 3 and inertia(a) == (2, 1, 5)
    assert rep.matrix == GRAM_M
    with pytest.raises(WitnessError):
        gram_witness(rep, Graph.complete(8))


def test_rank3_search():
    g = catalog.get("gram_example")
    rep = search_rank3_witness(g)
    assert rep is not None and all(abs(x) <= 4 for c in rep.columns for x in c)
    a = gram_witness(rep, g)
    assert rank(a) <= 3
    assert search_rank3_witness(Graph.empty(0)).columns == ()


def test_gram_search_other_signatures():
    c5 = Graph.cycle(5)
    rep = search_gram_witness(c5, (1, 1, 1), 2)
    assert rep is not None and rank(gram_witness(rep, c5)) <= 3
    # three mutually orthogonal plane vectors do not exist
    assert search_gram_witness(Graph.complete(3), (1, 1), 2) is not None
    assert search_gram_witness(Graph.empty(3), (1, 1), 3) is None


def test_degeneracy_order():
    order = degeneracy_order(Graph.complete_bipartite(1, 4))
    assert sorted(order) == list(range(5))
    assert order[0] == 0 or order[1] == 0


def test_store_round_trip_and_relabeling(tmp_path):
    path = tmp_path / "w.jsonl"
    store = WitnessStore(path)
    p3 = Graph.path(3)
    a = SymRatMatrix([[1, 1, 0], [1, 1, 1], [0, 1, 1]])
    rec = store.put(p3, a, "verified-input")
    assert rec.rank == 3
    better = SymRatMatrix([[1, 1, 0], [1, 2, 1], [0, 1, 1]])
    assert store.put(p3, better, "verified-input").rank == 2
    assert store.put(p3, a, "verified-input").rank == 2
    # another labeling of the same graph
    q = p3.relabel([1, 0, 2])
    got = store.get(q)
    assert in_pattern(got, q) and rank(got) == 2
    assert store.rank_of(Graph.path(4)) is None
    reopened = WitnessStore(path)
    assert len(reopened) == 1 and reopened.rank_of(p3) == 2
    assert len(store.journal) == 2


def test_store_rejects_bad_input(tmp_path):
    store = WitnessStore()
    with pytest.raises(WitnessError):
        store.put(Graph.path(3), SymRatMatrix.identity(3), "verified-input")
    with pytest.raises(WitnessError):
        store.put(Graph.path(2), SymRatMatrix([[1, 1], [1, 1]]), "guess")
    key = canonical_key(Graph.path(2))
    bogus = WitnessRecord(key, 2, 0, SymRatMatrix([[1, 1], [1, 1]]), "lifted")
    with pytest.raises(WitnessError):
        store.put_record(bogus)
    path = tmp_path / "bad.jsonl"
    path.write_text(bogus.to_json() + "\n")
    with pytest.raises(WitnessError, match="bad.jsonl:1"):
        WitnessStore(path)


def test_record_json():
    a = SymRatMatrix([[Fraction(1, 2), 1], [1, 2]])
    rec = WitnessRecord(canonical_key(Graph.path(2)), 2, 2, a, "lifted")
    d = json.loads(rec.to_json())
    assert d["matrix"][0][0] == ["1", "2"]
    assert WitnessRecord.from_json(rec.to_json()) == rec


def test_snapshot_is_independent():
    store = WitnessStore()
    store.put(Graph.path(2), SymRatMatrix([[1, 1], [1, 1]]), "verified-input")
    snap = store.snapshot()
    snap.put(Graph.path(3), SymRatMatrix([[1, 1, 0], [1, 2, 1], [0, 1, 1]]), "lifted")
    assert len(store) == 1 and len(snap) == 2


def test_lorentz_default():
    assert VectorRep(((1, 0, 0),)).signature == LORENTZ
