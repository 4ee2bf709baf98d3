import random

import pytest

from minrank import catalog
from minrank.enumerate import enumerate_connected
from minrank.forcing import closure, is_zfs, zero_forcing_number
from minrank.graph import Graph, GraphError, mask_of, vertex_connectivity
from minrank.iso import are_isomorphic
from minrank.structure import (
    CliqueSequence,
    chain_edge_connectivity_property,
    complete_to_kpath,
    is_ktree,
    kpath_forcing_chains,
    mr_le_2,
    recognize_k_path,
    three_connected_z4_rule,
)

THREEPATH_EDGES = [[0, 1, 2], [0, 1, 3], [1, 3, 4], [3, 4, 6], [3, 5, 6], [3, 6, 7], [6, 7, 9], [7, 8, 9], [8, 9, 10]]
THREEPATH_TRIANGLES = [
    [0, 1, 2, 3], [0, 1, 3, 4], [1, 3, 4, 6], [3, 4, 5, 6],
    [3, 5, 6, 7], [3, 6, 7, 9], [6, 7, 8, 9], [7, 8, 9, 10],
]


def threepath_sequence():
    return CliqueSequence(3, tuple(map(mask_of, THREEPATH_EDGES)), tuple(map(mask_of, THREEPATH_TRIANGLES)))


def random_kpath(rng, k, n):
    """Grow a k-path: each new vertex joins the newest k-clique minus one of its older members."""
    adj = [0] * n
    t = list(range(k + 1))
    for u in t:
        for v in t:
            if u != v:
                adj[u] |= 1 << v
    for x in range(k + 1, n):
        drop = rng.choice(t[:-1]) if x > k + 1 else rng.choice(t)
        e = [v for v in t if v != drop]
        for v in e:
            adj[x] |= 1 << v
            adj[v] |= 1 << x
        t = e + [x]
    g = Graph(n, tuple(adj))
    perm = list(range(n))
    rng.shuffle(perm)
    return g.relabel(perm)


def test_mr_le_2_examples():
    assert mr_le_2(Graph.complete(5))
    assert mr_le_2(Graph.complete_bipartite(3, 3))
    assert not mr_le_2(Graph.path(4))
    assert not mr_le_2(catalog.get("campstool"))
    assert not mr_le_2(catalog.get("dart"))
    with pytest.raises(GraphError):
        mr_le_2(Graph.empty(2))
    with pytest.raises(GraphError):
        mr_le_2(catalog.get("threepath"))


def test_mr_le_2_agrees_with_pipeline(seeded):
    p, _ = seeded
    for n in range(2, 8):
        for g in enumerate_connected(n):
            m, _ = p.compute(g)
            assert mr_le_2(g) == (n - m <= 2)


def test_threepath_sequence_chains():
    g = catalog.get("threepath")
    seq = threepath_sequence()
    seq.validate(g)
    assert seq.forces() == [(2, 3), (0, 4), (1, 6), (4, 5), (5, 7), (3, 9), (6, 8), (7, 10)]
    e0, chains = kpath_forcing_chains(seq, g)
    assert e0 == mask_of([0, 1, 2])
    assert chains == {(0, 4, 5, 7, 10), (2, 3, 9), (1, 6, 8)}
    assert chain_edge_connectivity_property(seq, g)


def test_recognize_threepath():
    g = catalog.get("threepath")
    assert is_ktree(g, 3) and not is_ktree(g, 2)
    seq = recognize_k_path(g, 3)
    assert seq is not None and seq.p == 8
    e0, chains = kpath_forcing_chains(seq, g)
    assert is_zfs(g, e0) and len(chains) == 3
    assert zero_forcing_number(g)[0] == 3


def test_complete_graph_is_a_kpath():
    for k in range(1, 6):
        g = Graph.complete(k + 1)
        seq = recognize_k_path(g, k)
        assert seq is not None and seq.p == 1
        assert is_zfs(g, seq.edges[0])


def test_non_kpaths():
    assert recognize_k_path(Graph.cycle(5), 2) is None
    assert recognize_k_path(Graph.complete_bipartite(1, 3), 1) is None
    # a 2-tree with three leaves branches, so it is not a 2-path
    g = Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (1, 4), (2, 4), (0, 5), (2, 5)])
    assert is_ktree(g, 2) and recognize_k_path(g, 2) is None


def test_sequence_validation_errors():
    seq = threepath_sequence()
    with pytest.raises(GraphError):
        CliqueSequence(3, seq.edges[:-1], seq.triangles).validate()
    with pytest.raises(GraphError):
        CliqueSequence(3, (mask_of([0, 1, 2]), mask_of([0, 1, 5])), (mask_of([0, 1, 2, 3]),)).validate()
    with pytest.raises(GraphError):
        seq.validate(Graph.path(11))


def test_generated_kpaths_have_z_equal_k(seeded):
    p, _ = seeded
    rng = random.Random(31)
    for _ in range(150):
        k = rng.randint(1, 3)
        n = rng.randint(k + 1, 8)
        g = random_kpath(rng, k, n)
        seq = recognize_k_path(g, k)
        assert seq is not None
        e0, chains = kpath_forcing_chains(seq, g)
        assert closure(g, e0)[0] == g.full
        assert zero_forcing_number(g)[0] == k
        assert p.compute(g)[0] == k
        assert chain_edge_connectivity_property(seq, g)


def test_every_small_kpath_recognized():
    # k-paths of order n <= 7 found in the full enumeration
    rng = random.Random(3)
    for k in (1, 2, 3):
        for n in range(k + 2, 8):
            found = [g for g in enumerate_connected(n) if recognize_k_path(g, k) is not None]
            assert found
            for g in found:
                assert zero_forcing_number(g)[0] == k
            sample = random_kpath(rng, k, n)
            assert any(are_isomorphic(sample, g) for g in found)


def test_z4_rule():
    k5 = Graph.complete(5)
    assert three_connected_z4_rule(k5) == 4
    assert three_connected_z4_rule(Graph.cycle(6)) is None
    assert three_connected_z4_rule(Graph.complete(4)) is None
    assert three_connected_z4_rule(k5, z=3, kappa=4) is None


def test_complete_to_kpath_examples():
    c4 = Graph.cycle(4)
    h = complete_to_kpath(c4, 2)
    assert h is not None and recognize_k_path(h, 2) is not None
    assert all(h.has_edge(u, v) for u, v in c4.edges())
    assert complete_to_kpath(Graph.complete_bipartite(1, 3), 1) is None
    assert complete_to_kpath(Graph.complete(4), 2) is None
    assert complete_to_kpath(Graph.path(2), 3) is None


def test_two_connected_partial_2paths_are_exactly_z_2(seeded):
    p, _ = seeded
    partial = z2 = 0
    for n in range(3, 8):
        for g in enumerate_connected(n):
            if vertex_connectivity(g) != 2:
                continue
            z = zero_forcing_number(g)[0]
            z2 += z == 2
            if complete_to_kpath(g, 2) is not None:
                partial += 1
                assert z == 2 and p.compute(g)[0] == 2
            else:
                assert z > 2
    assert partial == z2 > 0
