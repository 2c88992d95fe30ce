from collections import deque
from itertools import combinations_with_replacement, product

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbmatroid.errors import MatroidInputError, ScopeError
from cbmatroid.graphs import (Digraph, Graph, check_dirgraph_equivalence, complete_graph,
                              cycle_graph, direct_sum_graphic, disjoint_copies, exchange_premise_holds,
                              induced_two_connected, is_k_circuit, k_circuits, maximal_path_covers,
                              maximal_paths, mcb_digraph, minimal_covering_tuples)
from cbmatroid.matroid import cycle_matroid, direct_sum, uniform
from cbmatroid.mcb import check_mcb
from conftest import K3, K4, powerset
from strategies import graphs, matroids


def bfs_joined(G, edge_ids, u, v):
    adj = {x: [] for x in range(1, G.V + 1)}
    for e in edge_ids:
        a, b = G.edges[e - 1]
        adj[a].append(b)
        adj[b].append(a)
    seen, todo = {u}, deque([u])
    while todo:
        x = todo.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return v in seen


def oracle_two_connected(G, A):
    return all(bfs_joined(G, [f for f in A if f != e], *G.edges[e - 1]) for e in A)


def nx_two_connected(G, A):
    H = nx.MultiGraph()
    H.add_nodes_from(range(1, G.V + 1))
    for e in A:
        H.add_edge(*G.edges[e - 1], key=e)
    for e in A:
        u, v = G.edges[e - 1]
        H.remove_edge(u, v, key=e)
        ok = nx.has_path(H, u, v)
        H.add_edge(u, v, key=e)
        if not ok:
            return False
    return True


# --- graphs -------------------------------------------------------------------------

def test_graph_helpers():
    assert complete_graph(4) == K4
    assert cycle_graph(3).edges == ((1, 2), (2, 3), (3, 1))
    D = disjoint_copies(cycle_graph(3), 2)
    assert D.V == 6 and D.edges[3:] == ((4, 5), (5, 6), (6, 4))
    with pytest.raises(MatroidInputError):
        Graph(2, ((1, 3),))
    with pytest.raises(MatroidInputError):
        cycle_graph(1)


# --- k-circuits ---------------------------------------------------------------------

def test_k_circuits_examples():
    M = cycle_matroid(K4)
    assert len(k_circuits(M, 1)) == 7  # four triangles and three 4-cycles
    assert k_circuits(uniform(2, 5), 2, relaxed=True) == [frozenset(range(1, 6))]
    assert k_circuits(uniform(2, 5), 2) == []  # singletons break |T| = 2 r(T)
    with pytest.raises(MatroidInputError):
        k_circuits(M, 0)


@pytest.mark.parametrize("G", [K3, K4, cycle_graph(4)], ids=["K3", "K4", "C4"])
def test_one_circuits_are_graph_cycles(G):
    M = cycle_matroid(G)
    label = {frozenset(e): i for i, e in enumerate(G.edges, start=1)}
    H = nx.Graph(G.edges)
    cycles = {frozenset(label[frozenset((c[i], c[i - 1]))] for i in range(len(c))) for c in nx.simple_cycles(H)}
    assert set(k_circuits(M, 1)) == cycles == set(M.circuits())


@settings(max_examples=60, deadline=None)
@given(matroids(6), st.integers(1, 3), st.booleans())
def test_k_circuits_match_direct_check(M, k, relaxed):
    got = set(k_circuits(M, k, relaxed))
    expected = {S for S in powerset(M.ground) if is_k_circuit(M, S, k, relaxed)}
    assert got == expected


def test_direct_sum_graphic_witness():
    res = direct_sum_graphic(cycle_matroid(K4), 1)
    assert not res.graphic
    A, B = res.witness
    assert A & B and A in res.circuits and B in res.circuits
    two_triangles = cycle_matroid(disjoint_copies(K3, 2))
    assert direct_sum_graphic(two_triangles, 1) == (True, None, [frozenset({1, 2, 3}), frozenset({4, 5, 6})])


# --- two-connectivity -----------------------------------------------------------------

@pytest.mark.parametrize("G", [K3, K4, cycle_graph(4)], ids=["K3", "K4", "C4"])
def test_two_connected_exhaustive(G):
    for A in powerset(range(1, G.n + 1)):
        got = induced_two_connected(G, A)
        assert got == oracle_two_connected(G, A) == nx_two_connected(G, A)


def test_two_connected_examples():
    assert induced_two_connected(K4, [1, 2, 4])  # triangle 1-2-3
    assert not induced_two_connected(K4, [1, 2, 3])  # star at vertex 1
    assert induced_two_connected(K4, [])
    assert induced_two_connected(Graph(2, ((1, 2), (1, 2))), [1, 2])
    with pytest.raises(MatroidInputError):
        induced_two_connected(K4, [7])


@settings(max_examples=80, deadline=None)
@given(graphs(), st.data())
def test_two_connected_random(G, data):
    A = data.draw(st.sets(st.integers(1, G.n)))
    assert induced_two_connected(G, A) == oracle_two_connected(G, A)


# --- the r-fold union criterion --------------------------------------------------------

def naive_minimal_covering(M, r):
    flats = [F for F in M.flats() if F != M.ground]
    near = [M.ground] + [M.ground - {p} for p in M.ground]
    out = set()
    for tup in combinations_with_replacement(flats, r):
        U = frozenset().union(*tup)
        ok = [t for t in near if t <= U]
        if not ok:
            continue
        shrinkable = any(
            any(t <= frozenset().union(G, *(tup[:i] + tup[i + 1:])) for t in ok)
            for i, F in enumerate(tup) for G in flats if G < F)
        if not shrinkable:
            out.add(tuple(sorted(tup, key=lambda F: (len(F), sorted(F)))))
    return out


@pytest.mark.parametrize("M", [cycle_matroid(K3), cycle_matroid(K4), uniform(2, 4)], ids=["K3", "K4", "U24"])
@pytest.mark.parametrize("r", [1, 2])
def test_minimal_covering_tuples_match_definition(M, r):
    got = {tuple(M.subset(f) for f in t) for t in minimal_covering_tuples(M, r)}
    assert got == naive_minimal_covering(M, r)


def partition_oracle(G, r):
    for assign in product(range(r), repeat=G.n):
        for c in range(r):
            if not nx_two_connected(G, [e + 1 for e in range(G.n) if assign[e] == c]):
                return False
    return True


def test_dirgraph_triangle_report():
    rep = check_dirgraph_equivalence(K3, 2)
    js = rep.to_json()
    assert set(js["hypotheses"]) == {"r_circuits_disjoint", "r_circuits_disjoint_relaxed",
                                     "covering_tuples_within_disjoint", "covering_tuples_across_disjoint"}
    assert js["minimal_covering_tuples"] == [[[1], [2]], [[1], [3]], [[2], [3]]]
    assert js["hypotheses"]["covering_tuples_within_disjoint"]
    assert not js["hypotheses"]["covering_tuples_across_disjoint"]
    assert js["mcb_holds"] is False and js["union_two_connected"] is False
    assert js["failing_partition"] == [[1, 2], [3]]
    assert set(js["readings"]) == {"within_tuple", "across_tuples"}
    for reading in js["readings"].values():
        assert set(reading) == {"hypotheses_hold", "agree", "equivalence_asserted"}


@pytest.mark.parametrize("G", [K3, K4, cycle_graph(4), disjoint_copies(K3, 2)], ids=["K3", "K4", "C4", "2K3"])
@pytest.mark.parametrize("r", [1, 2])
def test_dirgraph_sides_match_oracles(G, r):
    rep = check_dirgraph_equivalence(G, r)
    M = cycle_matroid(G)
    assert rep.mcb_holds == check_mcb(M, r).holds
    assert rep.union_two_connected == partition_oracle(G, r)
    if rep.failing_partition:
        assert not all(nx_two_connected(G, part) for part in rep.failing_partition)


def test_dirgraph_workers_are_deterministic():
    assert check_dirgraph_equivalence(K4, 2, workers=1).to_json() == check_dirgraph_equivalence(K4, 2, workers=4).to_json()


def test_dirgraph_scope():
    with pytest.raises(ScopeError):
        check_dirgraph_equivalence(cycle_graph(9), 2)
    with pytest.raises(ScopeError):
        check_dirgraph_equivalence(K3, 4)


# --- digraphs from families ---------------------------------------------------------------

def test_mcb_digraph_examples():
    D = mcb_digraph(3, [{1, 2}, {2, 3}])
    assert D.edges == ((1, 2), (3, 2))
    assert maximal_paths(D) == [(1, 2), (2,), (3, 2)]
    assert mcb_digraph(2, []).edges == ((1, 2), (2, 1))
    with pytest.raises(MatroidInputError):
        mcb_digraph(2, [{3}])
    with pytest.raises(MatroidInputError):
        Digraph((1, 2), ((1, 1),))


families = st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.sets(st.integers(1, n)), max_size=4), st.sets(st.integers(1, n))))


@settings(max_examples=100, deadline=None)
@given(families)
def test_mcb_digraph_is_antitone_in_the_family(data):
    n, fam, extra = data
    assert set(mcb_digraph(n, fam + [extra]).edges) <= set(mcb_digraph(n, fam).edges)


@settings(max_examples=100, deadline=None)
@given(families)
def test_mcb_digraph_is_transitive(data):
    n, fam, _ = data
    E = set(mcb_digraph(n, fam).edges)
    assert all((i, k) in E for i, j in E for j2, k in E if j == j2 and i != k)


def test_maximal_path_covers_examples():
    D = mcb_digraph(3, [{1, 2}, {2, 3}])
    assert maximal_path_covers(D, 1) == []
    assert maximal_path_covers(D, 2) == [[(1, 2), (3, 2)]]
    chain = Digraph((1, 2, 3), ((1, 2), (2, 3)))
    assert maximal_path_covers(chain, 1) == [[(1, 2, 3)]]
    with pytest.raises(ScopeError):
        maximal_path_covers(Digraph(tuple(range(11)), ()), 2)


@settings(max_examples=60, deadline=None)
@given(matroids(7), st.integers(1, 3))
def test_exchange_premise_implies_mcb(M, r):
    if exchange_premise_holds(M, r):
        assert check_mcb(M, r).holds


def test_exchange_premise_examples():
    assert not exchange_premise_holds(uniform(3, 3), 1)
    assert exchange_premise_holds(uniform(2, 3), 1)
    assert not exchange_premise_holds(uniform(2, 3), 2)
    assert exchange_premise_holds(direct_sum([uniform(1, 2)]), 1)
