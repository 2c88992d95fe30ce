"""Explicit paving-matroid families: block pavings, their complements, and MCB counterexamples."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, NamedTuple

from ._bits import bits, mask_of, popcount
from .errors import DegenerateError, ParameterError
from .matroid import Matroid, from_m_partition


@dataclass(frozen=True)
class NobdParams:
    n: int
    B: int
    m: int

    def __post_init__(self):
        n, B, m = self.n, self.B, self.m
        if min(n, B, m) < 1:
            raise ParameterError("n, B, m must be positive")
        if B % 2:
            raise ParameterError(f"B={B} must be even")
        if B < 2 * m + 2:
            raise ParameterError(f"B >= 2m + 2 violated: {B} < {2 * m + 2}")
        _check_blocks(n, B)

    @property
    def a_max(self) -> Fraction:
        return Fraction(self.n, self.B) + Fraction(self.B, self.m) - 3


def _check_blocks(n, B):
    if n % B:
        raise ParameterError(f"B | n violated: {B} does not divide {n}")
    if n // B >= B:
        raise ParameterError(f"n/B < B violated: {n // B} >= {B}")
    if n // B < 2:
        raise ParameterError(f"need at least two blocks, n/B = {n // B}")


def block_hyperplanes(n: int, B: int, m: int) -> list:
    """n/B consecutive blocks of size B, then every m-subset meeting two or more blocks."""
    blocks = [frozenset(range(i * B + 1, (i + 1) * B + 1)) for i in range(n // B)]
    cross = [frozenset(c) for c in combinations(range(1, n + 1), m)
             if len({(x - 1) // B for x in c}) >= 2]
    return blocks + cross


def nobd_paving(p: NobdParams) -> Matroid:
    """Rank-(m+1) paving matroid: big blocks plus all cross m-subsets as hyperplanes."""
    return from_m_partition(p.n, block_hyperplanes(p.n, p.B, p.m), p.m)


def pavexmp_paving(n: int, B: int) -> Matroid:
    """The rank-3 (m = 2) block paving with blocks of even size B >= 4."""
    if B < 4 or B % 2:
        raise ParameterError(f"B must be even and at least 4, got {B}")
    _check_blocks(n, B)
    return from_m_partition(n, block_hyperplanes(n, B, 2), 2)


def pavexmp_a_bound(n: int, B: int) -> Fraction:
    """min(n/B + B/2 - 3, (n - 3)/B + 1)."""
    return min(Fraction(n, B) + Fraction(B, 2) - 3, Fraction(n - 3, B) + 1)


def mcbdimnobd_gap(n: int, a: int, m: int) -> int | None:
    """Smallest integer d with (n - 1)/a < d < (m - 1)a, or None."""
    if min(n, a, m) < 1:
        raise ParameterError("arguments must be positive")
    d = (n - 1) // a + 1
    return d if d < (m - 1) * a else None


# --- complement of a hyperplane ------------------------------------------------

class ComplementHyperplanes(NamedTuple):
    blocks: list  # frozensets of labels of M
    padded: list  # m-subsets added as their own blocks


def complement_hyperplanes(M: Matroid, A: Iterable[int]) -> ComplementHyperplanes:
    a_mask = M.mask(A)
    if a_mask not in set(M.hyperplane_masks):
        raise ParameterError(f"{sorted(A)} is not a hyperplane")
    m = M.r - 1
    rest = M.full & ~a_mask
    if popcount(rest) <= m:
        raise DegenerateError(f"|E - A| = {popcount(rest)} must exceed m = {m}")
    blocks = []
    for h in M.hyperplane_masks:
        inter = h & rest
        if popcount(inter) >= m and inter not in blocks:
            blocks.append(inter)
    covered = set()
    for blk in blocks:
        for sub in combinations(list(bits(blk)), m):
            covered.add(mask_of(sub))
    padded = [mask_of(sub) for sub in combinations(list(bits(rest)), m) if mask_of(sub) not in covered]
    return ComplementHyperplanes([M.subset(b) for b in blocks + padded], [M.subset(b) for b in padded])


def restrict_complement(M: Matroid, A: Iterable[int]) -> Matroid:
    """Paving matroid on E - A of rank m + 1 whose hyperplanes are the traces H - A with |H - A| >= m.

    Elements keep their labels from M.  If the traces miss an m-subset it is
    added as a block of its own (``complement_hyperplanes`` reports which).
    When E - A lies inside a single hyperplane the traces form one block,
    which is no m-partition; the result is then the restriction M|(E - A),
    the uniform matroid of rank m on E - A.
    """
    if not M.is_paving():
        raise ParameterError("M must be paving")
    A = list(A)
    hyp = complement_hyperplanes(M, A)
    rest_labels = sorted(M.ground - set(A))
    if len(hyp.blocks) < 2:
        return M.restriction(rest_labels)
    pos = {lab: i + 1 for i, lab in enumerate(rest_labels)}
    blocks = [[pos[x] for x in blk] for blk in hyp.blocks]
    R = from_m_partition(len(rest_labels), blocks, M.r - 1)
    return R.relabel(rest_labels)


# --- paving matroids failing MCB -------------------------------------------------

@dataclass(frozen=True)
class NegPavingParams:
    n: int
    A: frozenset
    m: int
    type2: tuple | None = None  # m-partition of E - A; default is the single block E - A

    def __post_init__(self):
        object.__setattr__(self, "A", frozenset(self.A))
        if self.m < 3:
            raise ParameterError(f"m >= 3 required, got {self.m}")
        if not self.A <= frozenset(range(1, self.n + 1)):
            raise ParameterError("A must be a subset of 1..n")
        if len(self.A) < self.m:
            raise ParameterError(f"|A| = {len(self.A)} < m = {self.m}")
        if self.n - len(self.A) < self.m + 1:
            raise ParameterError(f"|E - A| = {self.n - len(self.A)} < m + 1 = {self.m + 1}")

    @property
    def rest(self) -> frozenset:
        return frozenset(range(1, self.n + 1)) - self.A


class NegPaving(NamedTuple):
    matroid: Matroid
    witness_size: int


def neg_paving_hyperplanes(p: NegPavingParams) -> list:
    """A, then the Type-2 blocks inside E - A, then every m-subset meeting both A and E - A."""
    rest = p.rest
    type2 = [frozenset(b) for b in p.type2] if p.type2 is not None else [rest]
    for blk in type2:
        if not blk <= rest:
            raise ParameterError(f"Type-2 block {sorted(blk)} meets A")
    type3 = [frozenset(c) for c in combinations(range(1, p.n + 1), p.m)
             if set(c) & p.A and set(c) & rest]
    return [p.A] + type2 + type3


def neg_paving(p: NegPavingParams) -> NegPaving:
    M = from_m_partition(p.n, neg_paving_hyperplanes(p), p.m)
    return NegPaving(M, comb(len(p.rest) - 1, p.m) + 1)


def neg_paving_witness(p: NegPavingParams) -> tuple:
    """The family A plus the m-subsets of E - A - {q}, q = max(E - A); returns (family, q)."""
    rest = sorted(p.rest)
    q = rest[-1]
    family = [p.A] + [frozenset(c) for c in combinations(rest[:-1], p.m)]
    return family, q
