"""Shared corpus and brute-force oracles.

The oracles here work on plain Python sets of labels and never touch the
bitmask tables used by the library.
"""

from itertools import chain, combinations

import pytest

from cbmatroid.constructions import NegPavingParams, NobdParams, neg_paving, nobd_paving, pavexmp_paving
from cbmatroid.graphs import Graph, complete_graph
from cbmatroid.matroid import cycle_matroid, direct_sum, from_m_partition, uniform


def powerset(items):
    items = list(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))]


def naive_rank(bases, S):
    S = set(S)
    return max(len(S & set(b)) for b in bases)


def naive_closure(bases, ground, S):
    r = naive_rank(bases, S)
    return frozenset(e for e in ground if naive_rank(bases, set(S) | {e}) == r)


def naive_flats(bases, ground):
    return {S for S in powerset(ground) if naive_closure(bases, ground, S) == S}


def naive_basis_exchange(bases):
    bases = [frozenset(b) for b in bases]
    bset = set(bases)
    for B1 in bases:
        for B2 in bases:
            for x in B1 - B2:
                if not any((B1 - {x}) | {y} in bset for y in B2 - B1):
                    return False
    return True


def naive_connected(bases, ground):
    r = naive_rank(bases, ground)
    ground = frozenset(ground)
    for S in powerset(ground):
        if S and S != ground and naive_rank(bases, S) + naive_rank(bases, ground - S) == r:
            return False
    return True


def naive_mcb(M, a):
    """Every a-multiset of proper flats, no pruning, straight from the definition."""
    ground = M.ground
    flats = [F for F in naive_flats(M.sorted_bases(), ground) if F != ground]
    from itertools import combinations_with_replacement
    for tup in combinations_with_replacement(flats, a):
        U = frozenset().union(*tup)
        if len(ground - U) == 1:
            return False
    return True


def sparse_paving(n, r, circuit_hyperplanes):
    """Paving matroid of rank r whose r-element hyperplanes are the given sets.

    The sets must pairwise share at most r - 2 elements; every (r-1)-set outside
    them becomes its own hyperplane.
    """
    m = r - 1
    blocks = [frozenset(c) for c in circuit_hyperplanes]
    covered = {frozenset(s) for b in blocks for s in combinations(sorted(b), m)}
    blocks += [frozenset(s) for s in combinations(range(1, n + 1), m) if frozenset(s) not in covered]
    return from_m_partition(n, blocks, m)


K3 = complete_graph(3)
K4 = complete_graph(4)


def small_corpus():
    """Named matroids on at most 7 elements."""
    out = {
        "U11": uniform(1, 1),
        "U12": uniform(1, 2),
        "U13": uniform(1, 3),
        "U23": uniform(2, 3),
        "U33": uniform(3, 3),
        "U24": uniform(2, 4),
        "U34": uniform(3, 4),
        "U25": uniform(2, 5),
        "U35": uniform(3, 5),
        "U36": uniform(3, 6),
        "U02": uniform(0, 2),
        "MK3": cycle_matroid(K3),
        "MK4": cycle_matroid(K4),
        "U11+U23": direct_sum([uniform(1, 1), uniform(2, 3)]),
        "U12+U12": direct_sum([uniform(1, 2), uniform(1, 2)]),
        "U12+U23": direct_sum([uniform(1, 2), uniform(2, 3)]),
        "pav4": from_m_partition(4, [{1, 2}, {3, 4}], 1),
        "pav6": from_m_partition(6, [{1, 2, 3}, {4, 5, 6}], 1),
        "fano_like": sparse_paving(7, 3, [{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7},
                                          {3, 4, 7}, {3, 5, 6}]),
        "sparse6": sparse_paving(6, 3, [{1, 2, 3}, {3, 4, 5}]),
        "diamond": cycle_matroid(Graph(4, ((1, 2), (2, 3), (3, 4), (4, 1), (1, 3)))),
        "multi": cycle_matroid(Graph(3, ((1, 2), (1, 2), (2, 3)))),
    }
    return out


@pytest.fixture(scope="session")
def corpus():
    return small_corpus()


@pytest.fixture(scope="session")
def nobd_12_6_2():
    return nobd_paving(NobdParams(12, 6, 2))


@pytest.fixture(scope="session")
def neg8():
    return neg_paving(NegPavingParams(8, frozenset({1, 2, 3}), 3))


@pytest.fixture(scope="session")
def pav16():
    return pavexmp_paving(16, 8)


# One line per acceptance criterion, filled in by test_acceptance and echoed at the end of the run.
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
