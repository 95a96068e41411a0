import random

import pytest
from hypothesis import given, settings, strategies as st

from hatgraph.digraph import (
    Digraph,
    GraphError,
    chain,
    clique_number,
    complete,
    d_family,
    directed_cycle,
    directed_union,
    drop_blind,
    family,
    from_arcs,
    is_tournament,
    random_tournament,
    skeleton,
    transpose,
)

from oracles import brute_clique, random_dag, random_digraph

D1_ARCS = [(0, 1), (0, 2), (1, 2), (2, 1)]


@st.composite
def digraphs(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return from_arcs(n, chosen)


def test_from_arcs_examples():
    k1 = from_arcs(1, [])
    assert k1.n == 1 and not k1.arcs
    d1 = from_arcs(3, D1_ARCS)
    assert d1.out_neighbors(0) == (1, 2)
    assert d1.out_neighbors(1) == (2,)
    dup = from_arcs(2, [(0, 1), (0, 1)])
    assert dup.arcs == frozenset({(0, 1)})


@pytest.mark.parametrize("n, arcs", [(2, [(0, 2)]), (2, [(-1, 0)]), (2, [(1, 1)])])
def test_from_arcs_rejects(n, arcs):
    with pytest.raises(GraphError):
        from_arcs(n, arcs)


def test_size_cap():
    with pytest.raises(GraphError):
        Digraph(31, frozenset())


def test_transpose():
    assert transpose(from_arcs(2, [(0, 1)])).arcs == {(1, 0)}
    assert transpose(complete(2)) == complete(2)


@given(digraphs())
def test_transpose_involution_and_skeleton(d):
    assert transpose(transpose(d)) == d
    assert skeleton(transpose(d)) == skeleton(d)


def test_skeleton_examples():
    d1 = from_arcs(3, D1_ARCS)
    assert skeleton(d1).edges == {frozenset({1, 2})}
    assert not skeleton(random_tournament(7, 3)).edges
    for n in range(6):
        sk = skeleton(d_family(n))
        assert sk.n == 2 * n + 1
        assert len(sk.edges) == n
        touched = [v for e in sk.edges for v in e]
        assert len(touched) == len(set(touched)) == 2 * n  # a matching; vertex 0 isolated
        assert 0 not in touched


def test_clique_number_examples():
    for n in range(1, 6):
        assert clique_number(d_family(n)).size == 2
    assert clique_number(random_tournament(9, 1)).size == 1
    for m in range(1, 8):
        cert = clique_number(complete(m))
        assert cert.size == m and sorted(cert.witness) == list(range(m))


def test_clique_matches_brute_force():
    rng = random.Random(7)
    for _ in range(150):
        n = rng.randint(1, 10)
        d = random_digraph(rng, n, rng.choice([0.3, 0.6, 0.85]))
        cert = clique_number(d)
        assert cert.size == brute_clique(d)
        w = cert.witness
        assert len(w) == cert.size
        assert all((a, b) in d.arcs for a in w for b in w if a != b)


def test_directed_union_examples():
    assert directed_union(complete(1), complete(2)) == from_arcs(3, D1_ARCS)
    assert directed_union(complete(1), complete(1)).arcs == {(0, 1)}


def test_directed_union_associative():
    rng = random.Random(11)
    for _ in range(100):
        a, b, c = (random_digraph(rng, rng.randint(1, 4)) for _ in range(3))
        assert directed_union(a, directed_union(b, c)) == directed_union(directed_union(a, b), c)


def test_families():
    assert d_family(1) == from_arcs(3, D1_ARCS)
    for n in range(5):
        assert d_family(n).n == 2 * n + 1
    for m in range(1, 5):
        assert chain(m, 1) == complete(m)
    assert directed_cycle(3).arcs == {(0, 1), (1, 2), (2, 0)}
    assert random_tournament(6, 42) == random_tournament(6, 42)
    assert family("chain", 2, 3) == chain(2, 3)
    with pytest.raises(GraphError):
        family("d_family", -1)
    with pytest.raises(GraphError):
        family("complete", 0)
    with pytest.raises(GraphError):
        family("petersen", 1)


def test_random_tournament_orientation_is_pinned():
    # sha256(b"0:0:1") starts with 0x5b, low bit 1, so 0 -> 1
    assert random_tournament(4, 0).sorted_arcs() == [(0, 1), (1, 2), (1, 3), (2, 0), (2, 3), (3, 0)]


@settings(max_examples=60)
@given(st.integers(1, 16), st.integers(0, 10**6))
def test_random_tournaments_are_tournaments(n, seed):
    assert is_tournament(random_tournament(n, seed))


def test_is_tournament_examples():
    assert is_tournament(directed_cycle(3))
    assert not is_tournament(complete(2))
    assert is_tournament(complete(1))


def test_drop_blind_examples():
    reduced, removed = drop_blind(from_arcs(2, [(0, 1)]))
    assert reduced == complete(1) and removed == [1]
    reduced, removed = drop_blind(complete(2))
    assert reduced == complete(2) and removed == []


def test_drop_blind_on_dags_reaches_one_vertex():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(1, 6)
        reduced, removed = drop_blind(random_dag(rng, n))
        assert reduced == complete(1)
        assert len(removed) == n - 1


@given(digraphs(max_n=7))
def test_drop_blind_leaves_no_blind_vertex(d):
    reduced, removed = drop_blind(d)
    assert reduced.n + len(removed) == d.n
    if reduced.n > 1:
        assert all(reduced.out_degree(v) > 0 for v in reduced.vertices())
