"""Bitmask helpers. Element positions are 0-based bits; labels live on the matroid."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

MAX_N = 20

_POP16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.int8)


def popcount(x: int) -> int:
    return bin(x).count("1")


def popcount_array(a: np.ndarray) -> np.ndarray:
    a = a.astype(np.int64)
    return (_POP16[a & 0xFFFF] + _POP16[(a >> 16) & 0xFFFF]).astype(np.int8)


def bits(x: int) -> Iterator[int]:
    """Positions of the set bits of ``x`` in increasing order."""
    i = 0
    while x:
        if x & 1:
            yield i
        x >>= 1
        i += 1


def mask_of(positions: Iterable[int]) -> int:
    m = 0
    for p in positions:
        m |= 1 << p
    return m


def canonical_key(mask: int) -> tuple:
    """Sort key: cardinality first, then lexicographic on the sorted positions."""
    pos = tuple(bits(mask))
    return (len(pos), pos)


def lex_key(mask: int) -> tuple:
    return tuple(bits(mask))


def k_subsets(n: int, k: int) -> Iterator[int]:
    for c in combinations(range(n), k):
        yield mask_of(c)


def compress(mask: int, support: int) -> int:
    """Re-index the bits of ``mask`` that lie in ``support`` to 0..|support|-1."""
    out = 0
    j = 0
    for p in bits(support):
        if mask >> p & 1:
            out |= 1 << j
        j += 1
    return out


def subset_masks(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)
