from itertools import combinations, permutations
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.functions.combinatorial.numbers import stirling

from cbmatroid.covers import (compare_counts, count_covers_recursion, count_disjoint_covers,
                              count_minimal_covers_oracle, count_ordered_minimal_covers,
                              enumerate_minimal_covers, has_private_elements)
from cbmatroid.errors import MatroidInputError, ScopeError


def inclusion_exclusion(a, b):
    # members lacking a private element, excluded by sieving over which singleton patterns are banned
    ordered = sum((-1) ** j * comb(b, j) * (2 ** b - 1 - j) ** a for j in range(b + 1))
    assert ordered % factorial(b) == 0
    return ordered // factorial(b)


def brute_minimal_covers(a, b):
    ground = frozenset(range(1, a + 1))
    subsets = [frozenset(x for x in ground if m >> (x - 1) & 1) for m in range(1, 1 << a)]
    count = 0
    for fam in combinations(subsets, b):
        if frozenset().union(*fam) != ground:
            continue
        if all(frozenset().union(*(G for G in fam if G is not F)) != ground for F in fam):
            count += 1
    return count


def test_examples():
    assert count_minimal_covers_oracle(1, 1) == 1
    assert count_minimal_covers_oracle(2, 2) == 1
    assert count_minimal_covers_oracle(3, 2) == 6
    assert count_minimal_covers_oracle(3, 3) == 1
    assert count_ordered_minimal_covers(3, 2) == 12


@pytest.mark.parametrize("a", range(1, 13))
@pytest.mark.parametrize("b", range(1, 5))
def test_oracle_matches_inclusion_exclusion(a, b):
    assert count_minimal_covers_oracle(a, b) == inclusion_exclusion(a, b)


@pytest.mark.parametrize("a", range(1, 6))
@pytest.mark.parametrize("b", range(1, 4))
def test_oracle_matches_brute_force(a, b):
    assert count_minimal_covers_oracle(a, b) == brute_minimal_covers(a, b)


@pytest.mark.parametrize("E", range(1, 9))
@pytest.mark.parametrize("b", range(1, 4))
def test_enumeration_matches_oracle(E, b):
    covers = enumerate_minimal_covers(E, b)
    assert len(covers) == count_minimal_covers_oracle(E, b)
    if E <= 5:
        ground = frozenset(range(1, E + 1))
        for fam in covers:
            assert frozenset().union(*fam) == ground and len(set(fam)) == b


def test_enumeration_is_relabelling_invariant():
    covers = {frozenset(fam) for fam in enumerate_minimal_covers(4, 3)}
    for perm in permutations(range(1, 5)):
        move = dict(zip(range(1, 5), perm))
        image = {frozenset(frozenset(move[x] for x in F) for F in fam) for fam in covers}
        assert image == covers


def test_private_element_predicate():
    assert has_private_elements([0b011, 0b100])
    assert not has_private_elements([0b011, 0b110, 0b100])
    assert not has_private_elements([0b1, 0b1])
    assert has_private_elements([])


def test_scope_and_inputs():
    with pytest.raises(ScopeError):
        count_minimal_covers_oracle(13, 2)
    with pytest.raises(ScopeError):
        count_minimal_covers_oracle(3, 5)
    with pytest.raises(ScopeError):
        enumerate_minimal_covers(9, 2)
    with pytest.raises(MatroidInputError):
        count_minimal_covers_oracle(0, 1)
    with pytest.raises(MatroidInputError):
        compare_counts(2, 2, mode="nope")


# --- the block recursion --------------------------------------------------------------

def test_recursion_base_cases():
    assert [count_covers_recursion(a, 1) for a in range(1, 5)] == [1, 1, 1, 1]
    # sum_m C(a,m) 2^(a-m) = 3^a - 2^a
    assert [count_covers_recursion(a, 2) for a in range(1, 5)] == [3 ** a - 2 ** a for a in range(1, 5)]
    assert [count_covers_recursion(a, 2) for a in range(1, 5)] == [1, 5, 19, 65]


def test_recursion_third_level_by_hand():
    # a = 3, b = 3: r = 1 -> C(3,2) 4 T_{2,2}; r = 2 -> C(3,1) 2 T_{1,2}
    assert count_covers_recursion(3, 3) == 3 * 4 * 5 + 3 * 2 * 1
    assert count_covers_recursion(3, 3, ambient_n=5) == 3 * 16 * 5 + 3 * 8 * 1


def test_recursion_disagrees_with_oracle_at_2_2():
    c = compare_counts(2, 2)
    assert (c.value_recursion, c.value_oracle, c.agree) == (5, 1, False)
    assert c.to_json() == {"a": 2, "b": 2, "recursion": 5, "oracle": 1, "agree": False}
    only = compare_counts(2, 2, mode="oracle").to_json()
    assert only == {"a": 2, "b": 2, "oracle": 1}


def test_ambient_exponent_must_be_nonnegative():
    with pytest.raises(MatroidInputError):
        count_covers_recursion(4, 3, ambient_n=2)


# --- disjoint covers --------------------------------------------------------------------

def brute_surjections(a, r):
    from itertools import product
    return sum(1 for f in product(range(r), repeat=a) if len(set(f)) == r)


@pytest.mark.parametrize("a", range(1, 11))
def test_disjoint_covers_are_ordered_set_partitions(a):
    for r in range(1, a + 1):
        assert count_disjoint_covers(a, r) == factorial(r) * int(stirling(a, r))
    assert count_disjoint_covers(a, a + 1) == 0


@pytest.mark.parametrize("a", range(1, 8))
def test_disjoint_covers_brute_force(a):
    for r in range(1, a + 1):
        assert count_disjoint_covers(a, r) == brute_surjections(a, r)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 30), st.integers(1, 30))
def test_disjoint_cover_recurrence(a, r):
    # place element a: join one of r blocks, or open a new block in any of r positions
    if a == 1:
        assert count_disjoint_covers(1, r) == (1 if r == 1 else 0)
        return
    lhs = count_disjoint_covers(a, r)
    prev_same = count_disjoint_covers(a - 1, r)
    prev_less = count_disjoint_covers(a - 1, r - 1) if r > 1 else 0
    assert lhs == r * prev_same + r * prev_less
