"""Matroidal Cayley-Bacharach checks.

A matroid M on E satisfies MCB(a) when no union of ``a`` flats (repeats
allowed) equals E minus a single point.  A violating union at ``p`` can only
use flats avoiding ``p``, and any flat avoiding a non-loop ``p`` sits inside a
hyperplane avoiding ``p``.  So the decision reduces to: for each ``p``, can
E - p be covered by at most ``a`` hyperplanes that avoid ``p``?  That is a
small set-cover question answered by breadth-first search over reachable
unions.  The same engine answers the set-theoretic variant (sMCB) for an
arbitrary family of proper subsets.

MCB witnesses are therefore built from hyperplanes.  Witness order: the
smallest number of distinct members first, then the lexicographically
smallest member tuple (members in canonical order: size, then sorted
elements), then the smallest omitted point.  Witness tuples are
padded to exactly ``a`` members by repeating their last member.
"""

from __future__ import annotations

import os
import threading
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

import numpy as np

from ._bits import bits, canonical_key, mask_of, popcount
from .errors import MatroidInputError, SearchBudgetExceeded
from .matroid import Matroid

DEFAULT_BUDGET = 10**9


def search_budget() -> int:
    raw = os.environ.get("MCB_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class McbVerdict:
    holds: bool
    witness: tuple | None = None  # exactly ``a`` members, as frozensets of labels
    omitted: int | None = None
    stats: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        out = {"holds": self.holds}
        if not self.holds:
            out["witness"] = {"flats": [sorted(f) for f in self.witness], "omitted": self.omitted}
        out["stats"] = dict(self.stats)
        return out


@dataclass(frozen=True)
class CoverProfile:
    flats: tuple
    ranks: tuple  # sorted ascending
    total_rank: int

    @property
    def dim_sum(self) -> int:
        """Sum of d_i with d_i = r_i - 1 for r_i >= 2 and d_i = 1 for r_i = 1."""
        return sum(r - 1 if r >= 2 else 1 for r in self.ranks)

    def to_json(self) -> dict:
        return {"flats": [sorted(f) for f in self.flats], "ranks": list(self.ranks),
                "total_rank": self.total_rank}


class _Counter:
    def __init__(self, budget):
        self.budget = budget
        self.spent = 0
        self._lock = threading.Lock()

    def charge(self, k):
        with self._lock:
            self.spent += k
            spent = self.spent
        if spent > self.budget:
            raise SearchBudgetExceeded(self.budget, spent)


def _min_cover_size(cands: Sequence[int], target: int, limit: int, counter: _Counter) -> int | None:
    """Fewest members of ``cands`` whose union contains ``target`` (None if more than ``limit``)."""
    if not target:
        # a violation still needs one member; any candidate lies inside the empty target's complement
        return 1 if len(cands) else None
    useful = np.unique(np.array([c & target for c in cands if c & target], dtype=np.int64))
    if useful.size == 0:
        return None
    frontier = useful
    for k in range(1, limit + 1):
        if np.any(frontier == target):
            return k
        if k == limit:
            break
        counter.charge(frontier.size * useful.size)
        frontier = np.unique(np.concatenate([frontier, (frontier[:, None] | useful[None, :]).ravel()]))
    return None


def _first_cover(cands: Sequence[int], target: int, k: int) -> tuple | None:
    """Lexicographically first k-combination (by index) of ``cands`` covering ``target``."""
    sizes = [popcount(c & target) for c in cands]
    suffix_max = [0] * (len(cands) + 1)
    for i in range(len(cands) - 1, -1, -1):
        suffix_max[i] = max(sizes[i], suffix_max[i + 1])

    def rec(start, chosen, covered):
        left = k - len(chosen)
        missing = popcount(target & ~covered)
        if left == 0:
            return tuple(chosen) if missing == 0 else None
        if missing > left * suffix_max[start]:
            return None
        for i in range(start, len(cands) - left + 1):
            if missing and not cands[i] & target & ~covered:
                continue
            got = rec(i + 1, chosen + [i], covered | cands[i])
            if got is not None:
                return got
        return None

    return rec(0, [], 0)


def _search(n: int, members: Sequence[int], avoid: dict, a: int, budget: int,
            workers: int = 1) -> tuple:
    """Core search shared by MCB and sMCB; ``avoid[p]`` lists members avoiding p."""
    counter = _Counter(budget)
    full = (1 << n) - 1
    points = sorted(avoid)

    def per_point(p):
        target = full & ~(1 << p)
        return p, _min_cover_size(avoid[p], target, a, counter)

    if workers > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            sizes = dict(ex.map(per_point, points))
    else:
        sizes = dict(per_point(p) for p in points)
    stats = {"points": len(points), "members": len(members), "expanded": counter.spent}
    feasible = {p: k for p, k in sizes.items() if k is not None}
    if not feasible:
        return True, None, None, stats
    kmin = min(feasible.values())
    best = None
    for p in sorted(feasible):
        if feasible[p] != kmin:
            continue
        cands = avoid[p]
        combo = _first_cover(cands, full & ~(1 << p), kmin)
        key = (tuple(canonical_key(cands[i]) for i in combo), p)
        if best is None or key < best[0]:
            best = (key, [cands[i] for i in combo], p)
    _, chosen, p = best
    padded = list(chosen) + [chosen[-1]] * (a - len(chosen))
    stats["min_members"] = kmin
    return False, padded, p, stats


def _check_degree(a):
    if not isinstance(a, int) or a < 1:
        raise MatroidInputError(f"degree a must be a positive integer, got {a!r}")


def check_mcb(M: Matroid, a: int, proper_only: bool = True, budget: int | None = None,
              workers: int = 1) -> McbVerdict:
    """Decide MCB(a) for M.

    ``proper_only`` is accepted for interface symmetry; the improper flat E
    contains every point and can never occur in a violation, so the verdict
    does not depend on it.
    """
    _check_degree(a)
    if not M.is_simple_rank1():
        warnings.warn("matroid has a rank-1 flat with more than one element", stacklevel=2)
    budget = search_budget() if budget is None else budget
    hyps = M.hyperplane_masks
    avoid = {p: [h for h in hyps if not h >> p & 1] for p in range(M.n)}
    # Loops lie in every flat, so they never appear as the omitted point.
    avoid = {p: hs for p, hs in avoid.items() if hs}
    holds, wit, p, stats = _search(M.n, hyps, avoid, a, budget, workers)
    if holds:
        return McbVerdict(True, stats=stats)
    return McbVerdict(False, tuple(M.subset(f) for f in wit), M.labels[p], stats)


def check_mcb_exhaustive(M: Matroid, a: int, proper_only: bool = True,
                         budget: int | None = None) -> McbVerdict:
    """Reference search over a-multisets of all (proper) flats, with union-size pruning.

    Abandons a partial tuple once even the largest remaining flats could not
    bring its union up to n - 1 points.
    """
    _check_degree(a)
    budget = search_budget() if budget is None else budget
    counter = _Counter(budget)
    flats = [f for f in M.flat_masks if not proper_only or f != M.full]
    n, full = M.n, M.full
    if not flats:
        return McbVerdict(True, stats={"expanded": 0})
    biggest = max(popcount(f) for f in flats)

    def rec(start, chosen, union):
        counter.charge(1)
        left = a - len(chosen)
        if left == 0:
            missing = full & ~union
            if popcount(missing) == 1:
                return chosen, missing
            return None
        if popcount(union) + left * biggest < n - 1:
            return None
        for i in range(start, len(flats)):
            got = rec(i, chosen + [flats[i]], union | flats[i])
            if got is not None:
                return got
        return None

    found = rec(0, [], 0)
    stats = {"expanded": counter.spent}
    if found is None:
        return McbVerdict(True, stats=stats)
    chosen, missing = found
    p = next(bits(missing))
    return McbVerdict(False, tuple(M.subset(f) for f in chosen), M.labels[p], stats)


def check_mcb_naive(M: Matroid, a: int) -> McbVerdict:
    """Unpruned enumeration of every a-multiset of proper flats; tiny inputs only."""
    flats = [f for f in M.flat_masks if f != M.full]
    for combo in combinations_with_replacement(flats, a):
        union = 0
        for f in combo:
            union |= f
        missing = M.full & ~union
        if popcount(missing) == 1:
            return McbVerdict(False, tuple(M.subset(f) for f in combo), M.labels[next(bits(missing))])
    return McbVerdict(True)


def check_smcb(E_size: int, family: Iterable[Iterable[int]], a: int, budget: int | None = None,
               workers: int = 1) -> McbVerdict:
    """Set-theoretic MCB(a) for a family of proper subsets of {1..E_size}."""
    _check_degree(a)
    budget = search_budget() if budget is None else budget
    full = (1 << E_size) - 1
    members = set()
    for S in family:
        S = set(S)
        if any(not 1 <= x <= E_size for x in S):
            raise MatroidInputError(f"member {sorted(S)} leaves 1..{E_size}")
        m = mask_of(x - 1 for x in S)
        if m == full:
            raise MatroidInputError(f"member {sorted(S)} is not a proper subset")
        members.add(m)
    members = sorted(members, key=canonical_key)
    avoid = {p: [m for m in members if not m >> p & 1] for p in range(E_size)}
    holds, wit, p, stats = _search(E_size, members, avoid, a, budget, workers)
    if holds:
        return McbVerdict(True, stats=stats)
    to_set = lambda m: frozenset(i + 1 for i in bits(m))  # noqa: E731
    return McbVerdict(False, tuple(to_set(m) for m in wit), p + 1, stats)


def validate_witness(M: Matroid, verdict: McbVerdict, a: int) -> bool:
    """Re-check a failing verdict: a flats whose union is exactly E minus the omitted point."""
    if verdict.holds:
        return True
    if len(verdict.witness) != a or verdict.omitted not in M.ground:
        return False
    union = frozenset().union(*verdict.witness)
    return union == M.ground - {verdict.omitted} and all(M.is_flat(f) for f in verdict.witness)


def hyperplane_bound_applies(n: int, B: int, a: int, r: int) -> bool:
    """Whether n - 1 - B(a - 1) >= r, forcing near-covering a-tuples of small flats onto hyperplanes."""
    return n - 1 - B * (a - 1) >= r


def near_covering_tuples(M: Matroid, a: int, proper_only: bool = True):
    """Yield every a-multiset of flats whose union has at least n - 1 points."""
    flats = [f for f in M.flat_masks if not proper_only or f != M.full]
    if not flats:
        return
    biggest = max(popcount(f) for f in flats)
    n = M.n

    def rec(start, chosen, union):
        left = a - len(chosen)
        if left == 0:
            if popcount(union) >= n - 1:
                yield tuple(chosen)
            return
        if popcount(union) + left * biggest < n - 1:
            return
        for i in range(start, len(flats)):
            yield from rec(i, chosen + [flats[i]], union | flats[i])

    for combo in rec(0, [], 0):
        yield tuple(M.subset(f) for f in combo)


def cover_profiles(M: Matroid, k_max: int, proper_only: bool = True) -> list:
    """All inclusion-minimal covers of E by at most ``k_max`` distinct flats.

    Minimal: every member owns a point no other member covers.  Ordered by
    number of members, then lexicographically by member.
    """
    if k_max < 1:
        raise MatroidInputError("k_max must be >= 1")
    flats = [f for f in M.flat_masks if f and (not proper_only or f != M.full)]
    full = M.full
    biggest = max((popcount(f) for f in flats), default=0)
    out = []

    def rec(start, chosen, union):
        if union == full:
            # the last member added was needed, but earlier ones may not be
            if all(_has_private(f, chosen) for f in chosen):
                out.append(tuple(chosen))
            return
        left = k_max - len(chosen)
        if left == 0 or popcount(full & ~union) > left * biggest:
            return
        for i in range(start, len(flats)):
            if flats[i] & ~union:
                rec(i + 1, chosen + [flats[i]], union | flats[i])

    rec(0, [], 0)
    out.sort(key=lambda c: (len(c), [canonical_key(f) for f in c]))
    profiles = []
    for cover in out:
        ranks = tuple(sorted(M.rank_mask(f) for f in cover))
        profiles.append(CoverProfile(tuple(M.subset(f) for f in cover), ranks, sum(ranks)))
    return profiles


def _has_private(f: int, chosen: Sequence[int]) -> bool:
    rest = 0
    seen_self = False
    for g in chosen:
        if g == f and not seen_self:
            seen_self = True
            continue
        rest |= g
    return bool(f & ~rest)


def min_total_rank_cover(M: Matroid, k: int, proper_only: bool = True) -> int | None:
    """Least total rank of a cover of E by at most k (proper) flats; None when no such cover exists."""
    profiles = cover_profiles(M, k, proper_only)
    if not profiles:
        return None
    return min(p.total_rank for p in profiles)


def rank_bound_certificate(M: Matroid, k: int, d: int) -> dict:
    """Check that every cover of E by at most k proper flats has total rank at least d + 1."""
    least = min_total_rank_cover(M, k)
    return {"k": k, "d": d, "min_total_rank": least,
            "certified": least is None or least >= d + 1,
            "size_condition": M.n <= (d + 1) * k + 1}
