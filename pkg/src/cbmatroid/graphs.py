"""Graphic matroids and digraphs built from set families: k-circuits, 2-connectivity, path covers."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from ._bits import bits, canonical_key, popcount_array
from .errors import MatroidInputError, ScopeError
from .matroid import Matroid, cycle_matroid
from .mcb import check_mcb

KCIRCUIT_MAX_N = 14
DIRGRAPH_MAX_N = 8
DIRGRAPH_MAX_R = 3
PATHS_MAX_V = 10


@dataclass(frozen=True)
class Graph:
    """Undirected multigraph on vertices 1..V; edge i (1-based) is ``edges[i - 1]``."""

    V: int
    edges: tuple

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.V < 0:
            raise MatroidInputError("vertex count must be nonnegative")
        for u, v in edges:
            if not (1 <= u <= self.V and 1 <= v <= self.V):
                raise MatroidInputError(f"edge ({u},{v}) has an endpoint outside 1..{self.V}")

    @property
    def n(self) -> int:
        return len(self.edges)

    def to_json(self) -> dict:
        return {"V": self.V, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class Digraph:
    vertices: tuple
    edges: tuple  # sorted (i, j) pairs, i != j

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        edges = tuple(sorted({(int(i), int(j)) for i, j in self.edges}))
        vs = set(self.vertices)
        for i, j in edges:
            if i == j:
                raise MatroidInputError(f"self-loop at {i}")
            if i not in vs or j not in vs:
                raise MatroidInputError(f"edge ({i},{j}) leaves the vertex set")
        object.__setattr__(self, "edges", edges)

    def successors(self, i) -> list:
        return [b for a, b in self.edges if a == i]

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}


def complete_graph(k: int) -> Graph:
    return Graph(k, tuple((i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)))


def cycle_graph(k: int) -> Graph:
    if k < 2:
        raise MatroidInputError("cycles need at least two vertices")
    return Graph(k, tuple((i, i % k + 1) for i in range(1, k + 1)))


def disjoint_copies(G: Graph, r: int) -> Graph:
    """r vertex-disjoint copies of G; edge j of copy i gets label (i - 1) n + j."""
    edges = [(u + i * G.V, v + i * G.V) for i in range(r) for u, v in G.edges]
    return Graph(G.V * r, tuple(edges))


# --- k-circuits ---------------------------------------------------------------------

def _proper_subsets_all(good: np.ndarray, n: int) -> np.ndarray:
    # down[S] = good on every subset of S; proper[S] = good on every proper subset.
    down = good.copy()
    for i in range(n):
        bit = 1 << i
        with_bit = np.arange(1 << n)[np.arange(1 << n) & bit != 0]
        down[with_bit] &= down[with_bit ^ bit]
    proper = np.ones(1 << n, dtype=bool)
    idx = np.arange(1 << n)
    for i in range(n):
        bit = 1 << i
        with_bit = idx[idx & bit != 0]
        proper[with_bit] &= down[with_bit ^ bit]
    return proper


def k_circuits(M: Matroid, k: int, relaxed: bool = False) -> list:
    """Sets S with |S| = k r(S) + 1 and |T| = k r(T) for all T strictly inside S.

    ``relaxed`` weakens the condition on T to |T| <= k r(T).
    """
    if k < 1:
        raise MatroidInputError("k must be at least 1")
    if M.n > KCIRCUIT_MAX_N:
        raise ScopeError(f"k-circuit scan is limited to n <= {KCIRCUIT_MAX_N}")
    size = popcount_array(np.arange(1 << M.n))
    rk = M.rank_table.astype(np.int64)
    good = size <= k * rk if relaxed else size == k * rk
    hit = (size == k * rk + 1) & _proper_subsets_all(good, M.n)
    return [M.subset(int(S)) for S in sorted(np.flatnonzero(hit).tolist(), key=canonical_key)]


def is_k_circuit(M: Matroid, S: Iterable[int], k: int, relaxed: bool = False) -> bool:
    """Direct check of the defining equations, subset by subset."""
    s = M.mask(S)
    if len(list(bits(s))) != k * M.rank_mask(s) + 1:
        return False
    T = s
    while True:
        T = (T - 1) & s
        size, r = len(list(bits(T))), M.rank_mask(T)
        if (size > k * r) if relaxed else (size != k * r):
            return False
        if T == 0:
            return True


class SumGraphic(NamedTuple):
    graphic: bool
    witness: tuple | None  # two intersecting k-circuits
    circuits: list


def direct_sum_graphic(M: Matroid, k: int, relaxed: bool = False) -> SumGraphic:
    """Whether the k-circuits of M are pairwise disjoint, with an intersecting pair if not."""
    circ = k_circuits(M, k, relaxed)
    for A, B in combinations(circ, 2):
        if A & B:
            return SumGraphic(False, (A, B), circ)
    return SumGraphic(True, None, circ)


# --- 2-connectivity ---------------------------------------------------------------

def _connected_after_removal(G: Graph, edge_ids: Sequence[int], removed: int) -> bool:
    parent = list(range(G.V + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edge_ids:
        if e != removed:
            u, v = G.edges[e - 1]
            parent[find(u)] = find(v)
    u, v = G.edges[removed - 1]
    return find(u) == find(v)


def induced_two_connected(G: Graph, A: Iterable[int]) -> bool:
    """Every edge p of A has its endpoints joined by a path in A - {p}."""
    A = sorted(set(A))
    for e in A:
        if not 1 <= e <= G.n:
            raise MatroidInputError(f"edge label {e} outside 1..{G.n}")
    return all(_connected_after_removal(G, A, p) for p in A)


# --- the r-fold union criterion ---------------------------------------------------

def minimal_covering_tuples(M: Matroid, r: int) -> list:
    """r-multisets of proper flats covering E - {p} for some p, minimal under shrinking one member.

    Returned as sorted tuples of flat masks.
    """
    flats = [f for f in M.flat_masks if f != M.full]
    full = M.full
    near = {full} | {full & ~(1 << i) for i in range(M.n)}
    below = {f: [g for g in flats if g != f and not g & ~f] for f in flats}
    out = []
    for tup in combinations_with_replacement(flats, r):
        union = 0
        for f in tup:
            union |= f
        if not any(union & t == t for t in near):
            continue
        targets = [t for t in near if union & t == t]
        minimal = True
        for idx, f in enumerate(tup):
            rest = 0
            for j, g in enumerate(tup):
                if j != idx:
                    rest |= g
            if any(any((rest | g) & t == t for t in targets) for g in below[f]):
                minimal = False
                break
        if minimal:
            out.append(tup)
    return out


@dataclass
class DirgraphReport:
    n: int
    r: int
    circuits_disjoint: bool
    circuits_disjoint_relaxed: bool
    covering_tuples: list
    within_tuple_disjoint: bool
    across_tuples_disjoint: bool
    mcb_holds: bool
    union_two_connected: bool
    failing_partition: list | None = None
    readings: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "hypotheses": {
                "r_circuits_disjoint": self.circuits_disjoint,
                "r_circuits_disjoint_relaxed": self.circuits_disjoint_relaxed,
                "covering_tuples_within_disjoint": self.within_tuple_disjoint,
                "covering_tuples_across_disjoint": self.across_tuples_disjoint,
            },
            "minimal_covering_tuples": [[sorted(F) for F in t] for t in self.covering_tuples],
            "mcb_holds": self.mcb_holds,
            "union_two_connected": self.union_two_connected,
            "failing_partition": self.failing_partition,
            "readings": self.readings,
        }


def check_dirgraph_equivalence(G: Graph, r: int, workers: int = 1) -> DirgraphReport:
    """MCB(r) of M(G) against 2-connectivity of every partition lifted to r copies of G.

    A partition assigns each edge to one of the r copies (parts may be empty).
    Two readings of the disjointness hypothesis on minimal covering r-tuples
    are reported: flats pairwise disjoint inside each tuple, and distinct
    tuples sharing no flat.
    """
    if G.n > DIRGRAPH_MAX_N or not 1 <= r <= DIRGRAPH_MAX_R:
        raise ScopeError(f"dirgraph check covers n <= {DIRGRAPH_MAX_N}, 1 <= r <= {DIRGRAPH_MAX_R}")
    M = cycle_matroid(G)
    strict = direct_sum_graphic(M, r)
    relaxed = direct_sum_graphic(M, r, relaxed=True)
    tuples = minimal_covering_tuples(M, r)
    within = all(not (f & g) for t in tuples for f, g in combinations(t, 2))
    across = all(not set(s) & set(t) for s, t in combinations(tuples, 2))
    mcb = check_mcb(M, r, workers=workers).holds

    U = disjoint_copies(G, r)
    failing = None
    for assign in product(range(r), repeat=G.n):
        A = [c * G.n + e + 1 for e, c in enumerate(assign)]
        if not induced_two_connected(U, A):
            failing = [[e + 1 for e in range(G.n) if assign[e] == c] for c in range(r)]
            break
    rhs = failing is None
    report = DirgraphReport(G.n, r, strict.graphic, relaxed.graphic,
                            [tuple(M.subset(f) for f in t) for t in tuples],
                            within, across, mcb, rhs, failing)
    for name, hyp in (("within_tuple", within), ("across_tuples", across)):
        holds = strict.graphic and hyp
        report.readings[name] = {
            "hypotheses_hold": holds,
            "agree": mcb == rhs,
            "equivalence_asserted": holds,
        }
    return report


# --- digraphs from set families ---------------------------------------------------

def mcb_digraph(E_size: int, family: Iterable[Iterable[int]]) -> Digraph:
    """Edge i -> j iff every member containing i also contains j."""
    family = [frozenset(F) for F in family]
    for F in family:
        if not F <= set(range(1, E_size + 1)):
            raise MatroidInputError(f"{sorted(F)} is not a subset of 1..{E_size}")
    edges = [(i, j) for i in range(1, E_size + 1) for j in range(1, E_size + 1)
             if i != j and all(j in F for F in family if i in F)]
    return Digraph(tuple(range(1, E_size + 1)), tuple(edges))


def maximal_paths(D: Digraph) -> list:
    """Simple paths that cannot be extended at the end, grouped by start in vertex order."""
    out = []

    def extend(path, seen):
        nxt = [v for v in D.successors(path[-1]) if v not in seen]
        if not nxt:
            out.append(tuple(path))
            return
        for v in nxt:
            path.append(v)
            seen.add(v)
            extend(path, seen)
            seen.discard(v)
            path.pop()

    for s in D.vertices:
        extend([s], {s})
    return out


def maximal_path_covers(D: Digraph, r: int) -> list:
    """Families of at most r distinct maximal paths whose vertices cover D."""
    if len(D.vertices) > PATHS_MAX_V:
        raise ScopeError(f"path covers are limited to {PATHS_MAX_V} vertices")
    if r < 1:
        raise MatroidInputError("r must be at least 1")
    paths = maximal_paths(D)
    allv = set(D.vertices)
    out = []
    for k in range(1, r + 1):
        for fam in combinations(paths, k):
            if set().union(*fam) == allv:
                out.append(list(fam))
    return out


def exchange_premise_holds(M: Matroid, r: int) -> bool:
    """For every r-multiset of proper flats, each p has some x != p lying only in members that contain p.

    Equivalently every vertex of ``mcb_digraph`` on the tuple has an incoming edge.
    """
    flats = [M.sorted_subset(f) for f in M.flat_masks if f != M.full]
    pos = {lab: i + 1 for i, lab in enumerate(M.labels)}
    for tup in combinations_with_replacement(flats, r):
        D = mcb_digraph(M.n, [[pos[x] for x in F] for F in tup])
        targets = {j for _, j in D.edges}
        if len(targets) < M.n:
            return False
    return True
