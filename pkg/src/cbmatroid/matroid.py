"""Finite matroids stored by their bases.

Elements carry integer labels (1..n for freshly built matroids); internally a
subset is a bitmask over element positions.  Every derived table (rank,
flats, circuits) is computed once over all 2**n subsets with numpy and cached,
which is what keeps desk-scale brute force (n <= 16) cheap.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations, product
from math import comb
from typing import Iterable, Sequence

import numpy as np

from ._bits import MAX_N, bits, canonical_key, compress, k_subsets, mask_of, popcount, popcount_array, subset_masks
from .errors import InvalidPartitionError, MatroidInputError

VALIDATE_UP_TO = 12


class Matroid:
    def __init__(self, bases: Iterable[int], n: int, labels: Sequence[int] | None = None,
                 validate: bool | None = None):
        if not 0 <= n <= MAX_N:
            raise MatroidInputError(f"ground set size {n} outside 0..{MAX_N}")
        self.n = n
        self.labels = tuple(labels) if labels is not None else tuple(range(1, n + 1))
        if len(self.labels) != n or list(self.labels) != sorted(set(self.labels)):
            raise MatroidInputError("labels must be n distinct increasing integers")
        self.bases = frozenset(bases)
        if not self.bases:
            raise MatroidInputError("a matroid needs at least one basis")
        full = (1 << n) - 1
        sizes = {popcount(b) for b in self.bases}
        if len(sizes) != 1:
            raise MatroidInputError(f"bases have different sizes {sorted(sizes)}")
        if any(b & ~full for b in self.bases):
            raise MatroidInputError("basis uses an element outside the ground set")
        self.r = sizes.pop()
        self._pos = {lab: i for i, lab in enumerate(self.labels)}
        if validate is None:
            validate = n <= VALIDATE_UP_TO
        if validate:
            self._check_submodular()

    @classmethod
    def from_bases(cls, bases: Iterable[Iterable[int]], n: int | None = None,
                   labels: Sequence[int] | None = None, validate: bool | None = None) -> "Matroid":
        """Build from bases given as label sets (labels default to 1..n)."""
        if labels is None:
            if n is None:
                raise MatroidInputError("give n or labels")
            labels = range(1, n + 1)
        labels = tuple(labels)
        pos = {lab: i for i, lab in enumerate(labels)}
        masks = []
        for b in bases:
            try:
                masks.append(mask_of(pos[x] for x in b))
            except KeyError as e:
                raise MatroidInputError(f"element {e.args[0]} not in ground set") from None
        return cls(masks, len(labels), labels, validate)

    # --- label <-> mask -------------------------------------------------

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def ground(self) -> frozenset:
        return frozenset(self.labels)

    def mask(self, S: Iterable[int]) -> int:
        if isinstance(S, int):
            raise TypeError("pass a collection of element labels, not an int")
        m = 0
        for x in S:
            try:
                m |= 1 << self._pos[x]
            except KeyError:
                raise MatroidInputError(f"element {x!r} not in ground set {self.labels}") from None
        return m

    def subset(self, mask: int) -> frozenset:
        return frozenset(self.labels[i] for i in bits(mask))

    def sorted_subset(self, mask: int) -> list:
        return [self.labels[i] for i in bits(mask)]

    # --- tables -----------------------------------------------------------

    @cached_property
    def independent_table(self) -> np.ndarray:
        """Boolean array over all subsets: contained in some basis."""
        size = 1 << self.n
        ind = np.zeros(size, dtype=bool)
        ind[np.fromiter(self.bases, dtype=np.int64)] = True
        idx = subset_masks(self.n)
        for i in range(self.n):
            bit = 1 << i
            with_bit = idx[(idx & bit) != 0]
            ind[with_bit ^ bit] |= ind[with_bit]
        return ind

    @cached_property
    def rank_table(self) -> np.ndarray:
        idx = subset_masks(self.n)
        rk = np.where(self.independent_table, popcount_array(idx), 0).astype(np.int8)
        for i in range(self.n):
            bit = 1 << i
            with_bit = idx[(idx & bit) != 0]
            rk[with_bit] = np.maximum(rk[with_bit], rk[with_bit ^ bit])
        return rk

    def _check_submodular(self):
        # Local submodularity of the derived rank function is equivalent to the
        # basis-exchange axiom for an equicardinal family.
        rk = self.rank_table.astype(np.int16)
        idx = subset_masks(self.n)
        for x, y in combinations(range(self.n), 2):
            bx, by = 1 << x, 1 << y
            S = idx[(idx & (bx | by)) == 0]
            bad = rk[S | bx] + rk[S | by] < rk[S | bx | by] + rk[S]
            if bad.any():
                s = int(S[np.argmax(bad)])
                raise MatroidInputError(
                    "bases violate the exchange axiom (rank not submodular at "
                    f"S={self.sorted_subset(s)}, x={self.labels[x]}, y={self.labels[y]})")

    def rank_mask(self, mask: int) -> int:
        return int(self.rank_table[mask])

    def rank(self, S: Iterable[int]) -> int:
        return self.rank_mask(self.mask(S))

    def closure_mask(self, mask: int) -> int:
        rk = self.rank_table
        base = rk[mask]
        out = mask
        for i in range(self.n):
            bit = 1 << i
            if not mask & bit and rk[mask | bit] == base:
                out |= bit
        return out

    def closure(self, S: Iterable[int]) -> frozenset:
        return self.subset(self.closure_mask(self.mask(S)))

    @cached_property
    def flat_table(self) -> np.ndarray:
        rk = self.rank_table
        idx = subset_masks(self.n)
        flat = np.ones(1 << self.n, dtype=bool)
        for i in range(self.n):
            bit = 1 << i
            without = idx[(idx & bit) == 0]
            flat[without] &= rk[without | bit] > rk[without]
        return flat

    @cached_property
    def flat_masks(self) -> tuple:
        """All flats as masks, by cardinality and then lexicographically."""
        found = np.nonzero(self.flat_table)[0].tolist()
        return tuple(sorted(found, key=canonical_key))

    def is_flat_mask(self, mask: int) -> bool:
        return bool(self.flat_table[mask])

    def is_flat(self, S: Iterable[int]) -> bool:
        return self.is_flat_mask(self.mask(S))

    def flats(self) -> list:
        return [self.subset(f) for f in self.flat_masks]

    @cached_property
    def hyperplane_masks(self) -> tuple:
        rk = self.rank_table
        return tuple(f for f in self.flat_masks if rk[f] == self.r - 1)

    def hyperplanes(self) -> list:
        return [self.subset(h) for h in self.hyperplane_masks]

    @cached_property
    def circuit_masks(self) -> tuple:
        ind = self.independent_table
        idx = subset_masks(self.n)
        circ = ~ind
        for i in range(self.n):
            bit = 1 << i
            with_bit = idx[(idx & bit) != 0]
            circ[with_bit] &= ind[with_bit ^ bit]
        return tuple(sorted(np.nonzero(circ)[0].tolist(), key=canonical_key))

    def circuits(self) -> list:
        return [self.subset(c) for c in self.circuit_masks]

    def is_independent(self, S: Iterable[int]) -> bool:
        return bool(self.independent_table[self.mask(S)])

    @property
    def loops(self) -> frozenset:
        return self.subset(self.closure_mask(0))

    # --- predicates -------------------------------------------------------

    def is_paving(self) -> bool:
        return all(popcount(c) >= self.r for c in self.circuit_masks)

    def is_simple_rank1(self) -> bool:
        """Every rank-1 flat is a single element."""
        rk = self.rank_table
        return all(popcount(f) == 1 for f in self.flat_masks if rk[f] == 1)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        rk = self.rank_table.astype(np.int16)
        idx = np.arange(1, self.full, dtype=np.int64)
        return not bool(np.any(rk[idx] + rk[self.full ^ idx] == self.r))

    def is_coconnected(self) -> bool:
        return self.dual().is_connected()

    # --- derived matroids -------------------------------------------------

    def dual(self) -> "Matroid":
        full = self.full
        return Matroid((full ^ b for b in self.bases), self.n, self.labels, validate=False)

    def restriction(self, S: Iterable[int]) -> "Matroid":
        return self._restrict_mask(self.mask(S))

    def _restrict_mask(self, s: int) -> "Matroid":
        k = self.rank_mask(s)
        bases = {compress(b & s, s) for b in self.bases if popcount(b & s) == k}
        labels = [self.labels[i] for i in bits(s)]
        return Matroid(bases, len(labels), labels, validate=False)

    def deletion(self, S: Iterable[int]) -> "Matroid":
        return self._restrict_mask(self.full & ~self.mask(S))

    def contraction(self, S: Iterable[int]) -> "Matroid":
        s = self.mask(S)
        return self.dual()._restrict_mask(self.full & ~s).dual()

    def relabel(self, labels: Sequence[int]) -> "Matroid":
        return Matroid(self.bases, self.n, labels, validate=False)

    # --- dunder -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.labels == other.labels and self.bases == other.bases

    def __hash__(self):
        return hash((self.labels, self.bases))

    def __repr__(self):
        return f"<Matroid rank {self.r} on {self.n} elements, {len(self.bases)} bases>"

    def sorted_bases(self) -> list:
        return [self.sorted_subset(b) for b in sorted(self.bases, key=lambda b: tuple(bits(b)))]


# --- constructors ------------------------------------------------------------

def uniform(r: int, n: int) -> Matroid:
    if not 0 <= r <= n:
        raise MatroidInputError(f"U_{{{r},{n}}} needs 0 <= r <= n")
    return Matroid(k_subsets(n, r), n, validate=False)


def free(n: int) -> Matroid:
    return uniform(n, n)


def cycle_matroid(graph) -> Matroid:
    """Graphic matroid of ``graph`` (anything with ``V`` and ``edges``; vertices 1..V).

    Bases are the spanning forests; loops are never in a basis.
    """
    V, edges = graph.V, list(graph.edges)
    n = len(edges)
    if n > MAX_N:
        raise MatroidInputError(f"{n} edges exceeds the {MAX_N}-element limit")
    for u, v in edges:
        if not (1 <= u <= V and 1 <= v <= V):
            raise MatroidInputError(f"edge ({u},{v}) has an endpoint outside 1..{V}")

    def forest_size(edge_ids):
        parent = list(range(V + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        size = 0
        for i in edge_ids:
            a, b = find(edges[i][0]), find(edges[i][1])
            if a != b:
                parent[a] = b
                size += 1
        return size

    r = forest_size(range(n))
    bases = [mask_of(c) for c in combinations(range(n), r) if forest_size(c) == r]
    return Matroid(bases, n, validate=False)


def from_m_partition(n: int, blocks: Iterable[Iterable[int]], m: int) -> Matroid:
    """Paving matroid of rank m+1 on 1..n whose hyperplanes are ``blocks``.

    ``blocks`` must be an m-partition: at least two blocks, each of size >= m,
    and every m-subset of 1..n inside exactly one block.
    """
    if m < 1 or n <= m:
        raise MatroidInputError(f"need m >= 1 and n > m (got n={n}, m={m})")
    if n > MAX_N:
        raise MatroidInputError(f"n={n} exceeds {MAX_N}")
    block_masks = []
    for blk in blocks:
        blk = sorted(set(blk))
        if any(not 1 <= x <= n for x in blk):
            raise InvalidPartitionError(f"block {blk} leaves 1..{n}", blk)
        if len(blk) < m:
            raise InvalidPartitionError(f"block {blk} has fewer than m={m} elements", blk)
        block_masks.append(mask_of(x - 1 for x in blk))
    if len(block_masks) < 2:
        raise InvalidPartitionError("an m-partition needs at least two blocks")
    owner = {}
    for bi, bm in enumerate(block_masks):
        for sub in combinations(list(bits(bm)), m):
            key = mask_of(sub)
            if key in owner:
                raise InvalidPartitionError(
                    f"m-subset {[x + 1 for x in sub]} lies in two blocks", frozenset(x + 1 for x in sub))
            owner[key] = bi
    if len(owner) != comb(n, m):
        for sub in combinations(range(n), m):
            if mask_of(sub) not in owner:
                raise InvalidPartitionError(
                    f"m-subset {[x + 1 for x in sub]} lies in no block", frozenset(x + 1 for x in sub))
    bases = []
    for sub in combinations(range(n), m + 1):
        s = mask_of(sub)
        head = s & ~(1 << sub[-1])
        if s & ~block_masks[owner[head]]:
            bases.append(s)
    return Matroid(bases, n, validate=False)


def direct_sum(parts: Sequence[Matroid]) -> Matroid:
    """Direct sum with elements relabeled 1..total, parts laid out in order."""
    parts = list(parts)
    total = sum(p.n for p in parts)
    if total > MAX_N:
        raise MatroidInputError(f"direct sum has {total} elements, above {MAX_N}")
    shifted = []
    offset = 0
    for p in parts:
        shifted.append([b << offset for b in p.bases])
        offset += p.n
    bases = (sum(choice) for choice in product(*shifted)) if parts else [0]
    return Matroid(bases, total, validate=False)


def minor_interval(M: Matroid, F: Iterable[int], G: Iterable[int]) -> Matroid:
    """The minor (M|G)/F on G minus F, for flats F inside G; keeps original labels."""
    f, g = M.mask(F), M.mask(G)
    if not M.is_flat_mask(f) or not M.is_flat_mask(g):
        raise MatroidInputError("both F and G must be flats")
    if f & ~g:
        raise MatroidInputError("F must be contained in G")
    rf, rg = M.rank_mask(f), M.rank_mask(g)
    support = g & ~f
    bases = {compress(b & support, support) for b in M.bases
             if popcount(b & f) == rf and popcount(b & g) == rg}
    labels = [M.labels[i] for i in bits(support)]
    return Matroid(bases, len(labels), labels, validate=False)
