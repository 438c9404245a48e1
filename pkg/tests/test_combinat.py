from itertools import combinations, permutations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import sets
from strategies import graphs, posets
from latticegm.combinat import (
    DistributiveLattice,
    Graph,
    Poset,
    boolean_lattice,
    cliques,
    comparability_graph,
    ideal_closure,
    is_natural,
    join_irreducibles,
    lattice_close,
    masks,
    minimal_graph,
    order_ideals,
    separates,
    underlying_poset,
)
from latticegm.errors import InputError, InvalidTriple, NotNatural

UNNATURAL_SETS = sets("", "12", "3", "4", "34", "123", "124", "1234")


# -- oracles -------------------------------------------------------------------------


def brute_ideals(P):
    return sorted(S for S in range(1 << P.m) if P.is_ideal(S))


def brute_covers(L):
    out = []
    for S in L.elements:
        for T in L.elements:
            if T != S and masks.is_subset(T, S):
                if not any(U not in (S, T) and masks.is_subset(T, U) and masks.is_subset(U, S) for U in L.elements):
                    out.append((S, T))
    return out


def brute_natural(L):
    if 0 not in L or masks.full_mask(L.m) not in L:
        return False
    return all(masks.popcount(S) - masks.popcount(T) == 1 for S, T in brute_covers(L))


def chain_coarsening(L):
    """Relations i < j holding in every total order read off a maximal chain."""
    covers = brute_covers(L)
    up = {S: [T for T, U in covers if U == S] for S in L.elements}
    orders = []

    def walk(S, seq):
        if not up[S]:
            orders.append(seq)
        for T in up[S]:
            walk(T, seq + masks.elements(T & ~S))

    walk(0, [])
    rel = set()
    for i, j in permutations(range(L.m), 2):
        if all(o.index(i) < o.index(j) for o in orders):
            rel.add((i, j))
    return rel


# -- order ideals ---------------------------------------------------------------------


def test_chain_ideals(chain3):
    assert order_ideals(chain3).elements == tuple(sets("", "1", "12", "123"))


def test_antichain_ideals():
    assert order_ideals(Poset.antichain(2)).elements == tuple(sets("", "1", "2", "12"))


def test_fence_ideals(fence_lattice):
    assert sorted(fence_lattice.elements) == sorted(sets("", "1", "3", "13", "34", "123", "134", "1234"))


@given(posets())
def test_order_ideals_brute_force(P):
    L = order_ideals(P)
    assert sorted(L.elements) == brute_ideals(P)
    assert 0 in L and masks.full_mask(P.m) in L
    assert is_natural(L)


# -- poset parsing ---------------------------------------------------------------------


@pytest.mark.parametrize(
    "pairs",
    [
        [(2, 1), (2, 1)],  # duplicate
        [(2, 1), (3, 2), (3, 1)],  # transitive
        [(1, 2), (2, 1)],  # cycle
        [(1, 1)],  # loop
        [(5, 1)],  # out of range
    ],
)
def test_bad_covers_rejected(pairs):
    with pytest.raises(InputError):
        Poset.from_labels(3, pairs)


# -- lattice closure ---------------------------------------------------------------------


def test_closure_examples():
    assert lattice_close(sets("", "12"), 2).elements == tuple(sets("", "12"))
    assert lattice_close(sets("1", "2"), 2).elements == tuple(sets("", "1", "2", "12"))
    assert sorted(lattice_close(UNNATURAL_SETS, 4).elements) == sorted(UNNATURAL_SETS)


@given(st.integers(1, 5).flatmap(lambda m: st.tuples(
    st.just(m),
    st.lists(st.integers(0, (1 << m) - 1), min_size=1, max_size=6),
    st.lists(st.integers(0, (1 << m) - 1), max_size=4),
)))
def test_closure_operator_laws(args):
    m, fam, more = args
    L = lattice_close(fam, m)
    assert set(fam) <= set(L.elements)
    assert lattice_close(L.elements, m) == L
    assert set(L.elements) <= set(lattice_close(fam + more, m).elements)
    DistributiveLattice(m, L.elements)  # passes the closure check


def test_non_lattice_rejected():
    with pytest.raises(InputError):
        DistributiveLattice(2, sets("1", "2"))


# -- naturality -------------------------------------------------------------------------


def test_naturality_examples(fence_lattice):
    assert not is_natural(DistributiveLattice(2, sets("", "12")))
    assert is_natural(boolean_lattice(3))
    assert not is_natural(DistributiveLattice(4, UNNATURAL_SETS))
    assert is_natural(fence_lattice)


@given(st.integers(1, 4).flatmap(lambda m: st.tuples(
    st.just(m), st.lists(st.integers(0, (1 << m) - 1), min_size=1, max_size=5))))
def test_naturality_matches_cover_definition(args):
    m, fam = args
    L = lattice_close(fam, m)
    assert is_natural(L) == brute_natural(L)
    assert sorted(L.cover_pairs()) == sorted(brute_covers(L))


# -- Birkhoff ---------------------------------------------------------------------------


def test_join_irreducibles(fence_lattice, chain3):
    assert join_irreducibles(fence_lattice) == sets("1", "3", "34", "123")
    assert join_irreducibles(boolean_lattice(2)) == sets("1", "2")
    assert join_irreducibles(order_ideals(chain3)) == sets("1", "12", "123")


def test_join_irreducibles_unnatural():
    # {12}, {3}, {4} are the join irreducibles of the unnatural lattice
    assert join_irreducibles(DistributiveLattice(4, UNNATURAL_SETS)) == sets("3", "4", "12")


def test_underlying_poset_examples(fence_lattice, fence_poset, chain3):
    assert underlying_poset(fence_lattice) == fence_poset
    assert underlying_poset(boolean_lattice(3)) == Poset.antichain(3)
    assert underlying_poset(order_ideals(chain3)) == chain3


def test_underlying_poset_needs_natural():
    with pytest.raises(NotNatural):
        underlying_poset(DistributiveLattice(4, UNNATURAL_SETS))


@given(posets())
def test_birkhoff_round_trip(P):
    L = order_ideals(P)
    Q = underlying_poset(L)
    assert Q == P
    assert order_ideals(Q) == L
    assert len(join_irreducibles(L)) == P.m


@given(posets(max_m=5))
def test_poset_is_common_coarsening_of_chains(P):
    L = order_ideals(P)
    expected = {(i, j) for i, j in permutations(range(P.m), 2) if P.lt(i, j)}
    assert chain_coarsening(L) == expected


# -- ideal closure -----------------------------------------------------------------------


def test_ideal_closure_examples(fence_poset):
    (four, two, one_two, two_three, empty) = sets("4", "2", "12", "23", "")
    assert ideal_closure(fence_poset, four) == sets("34")[0]
    for S in (two, one_two, two_three):
        assert ideal_closure(fence_poset, S) == sets("123")[0]
    assert ideal_closure(fence_poset, empty) == 0


@given(posets(), st.data())
def test_ideal_closure_laws(P, data):
    S = data.draw(st.integers(0, (1 << P.m) - 1))
    T = data.draw(st.integers(0, (1 << P.m) - 1))
    L = order_ideals(P)
    c = ideal_closure(P, S)
    assert masks.is_subset(S, c) and c in L
    assert ideal_closure(P, c) == c
    assert masks.is_subset(c, ideal_closure(P, S | T))


# -- graphs -----------------------------------------------------------------------------


def test_minimal_graph_examples(fence_lattice, chain3):
    assert minimal_graph(fence_lattice).sorted_edges() == [(0, 1), (1, 2), (2, 3)]
    assert minimal_graph(boolean_lattice(4)).edges == frozenset()
    assert minimal_graph(order_ideals(chain3)).sorted_edges() == [(0, 1), (1, 2)]


def test_comparability_examples(chain3, fence_poset):
    assert comparability_graph(chain3).sorted_edges() == [(0, 1), (0, 2), (1, 2)]
    assert comparability_graph(Poset.antichain(3)).edges == frozenset()
    assert comparability_graph(fence_poset).sorted_edges() == [(0, 1), (1, 2), (2, 3)]


@given(posets())
def test_minimal_inside_comparability(P):
    L = order_ideals(P)
    assert minimal_graph(L).is_subgraph_of(comparability_graph(underlying_poset(L)))


def test_clique_examples(four_cycle):
    every, maximal = cliques(four_cycle)
    assert sorted(every) == sorted(sets("", "1", "2", "3", "4", "12", "23", "34", "14"))
    assert sorted(maximal) == sorted(sets("12", "23", "34", "14"))
    assert cliques(Graph.empty(2)) == (sets("", "1", "2"), sets("1", "2"))
    every, maximal = cliques(Graph.complete(3))
    assert sorted(every) == list(range(8)) and maximal == sets("123")


@given(graphs(max_m=7))
def test_cliques_brute_force(G):
    every, maximal = cliques(G)
    assert sorted(every) == sorted(S for S in range(1 << G.m) if G.is_clique(S))
    nxg = nx.Graph()
    nxg.add_nodes_from(range(G.m))
    nxg.add_edges_from(G.edges)
    assert sorted(maximal) == sorted(masks.from_elements(c) for c in nx.find_cliques(nxg))
    for C in maximal:
        assert not any(C != D and masks.is_subset(C, D) for D in every)


def test_separation_examples(four_cycle):
    (one, two, three, twofour) = sets("1", "2", "3", "24")
    assert separates(four_cycle, one, three, twofour)
    assert not separates(four_cycle, one, two, 0)
    assert separates(Graph.path(3), one, three, two)
    with pytest.raises(InvalidTriple):
        separates(four_cycle, one, one, 0)
    with pytest.raises(InvalidTriple):
        separates(four_cycle, 0, one, 0)


@given(graphs(min_m=2, max_m=6), st.data())
def test_separation_against_networkx(G, data):
    labels = data.draw(st.lists(st.sampled_from("ABCx"), min_size=G.m, max_size=G.m))
    A = masks.from_elements(i for i, c in enumerate(labels) if c == "A")
    B = masks.from_elements(i for i, c in enumerate(labels) if c == "B")
    C = masks.from_elements(i for i, c in enumerate(labels) if c == "C")
    if not A or not B:
        return
    nxg = nx.Graph()
    keep = [i for i in range(G.m) if not C >> i & 1]
    nxg.add_nodes_from(keep)
    nxg.add_edges_from((i, j) for i, j in G.edges if i in keep and j in keep)
    connected = any(nx.has_path(nxg, a, b) for a in masks.elements(A) for b in masks.elements(B))
    assert separates(G, A, B, C) == (not connected)
    if separates(G, A, B, C):
        for extra in masks.elements(masks.full_mask(G.m) & ~(A | B | C)):
            assert separates(G, A, B, C | 1 << extra)
