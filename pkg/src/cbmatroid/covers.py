"""Counting set covers: minimal covers, the block recursion, and ordered disjoint covers."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb, factorial

from ._bits import canonical_key
from .errors import MatroidInputError, ScopeError

ORACLE_MAX_A = 12
ORACLE_MAX_B = 4
ENUM_MAX_E = 8
ENUM_MAX_B = 3


def _check_positive(**kw):
    for name, v in kw.items():
        if not isinstance(v, int) or v < 1:
            raise MatroidInputError(f"{name} must be a positive integer, got {v!r}")


def count_minimal_covers_oracle(a: int, b: int) -> int:
    """Unordered b-multisets of nonempty subsets of [a] covering [a] with no removable member.

    Exhaustive over membership patterns: each element picks the nonempty set of
    members containing it, and a member is irremovable exactly when some element
    picks it alone.  Such members are pairwise distinct, so ordered counts
    divide evenly by b!.
    """
    _check_positive(a=a, b=b)
    if a > ORACLE_MAX_A or b > ORACLE_MAX_B:
        raise ScopeError(f"oracle covers a <= {ORACLE_MAX_A}, b <= {ORACLE_MAX_B}")
    full = (1 << b) - 1
    states = {0: 1}
    for _ in range(a):
        nxt = defaultdict(int)
        for seen, ways in states.items():
            for pattern in range(1, full + 1):
                key = seen | pattern if pattern & (pattern - 1) == 0 else seen
                nxt[key] += ways
        states = nxt
    ordered = states.get(full, 0)
    return ordered // factorial(b)


def count_ordered_minimal_covers(a: int, b: int) -> int:
    return count_minimal_covers_oracle(a, b) * factorial(b)


def count_covers_recursion(a: int, b: int, ambient_n: int | None = None) -> int:
    """T_{a,b}: T_{a,1} = 1, T_{a,2} = sum_m C(a,m) 2^(a-m), and for b >= 3

        T_{a,b} = sum_{r=1}^{a-1} C(a, a-r) 2^(a-r) T_{a-r, b-1}.

    With ``ambient_n`` the power of two uses the fixed exponent n - r instead.
    """
    _check_positive(a=a, b=b)
    if b == 1:
        return 1
    if b == 2:
        return sum(comb(a, m) * 2 ** (a - m) for m in range(1, a + 1))
    total = 0
    for r in range(1, a):
        e = (ambient_n if ambient_n is not None else a) - r
        if e < 0:
            raise MatroidInputError(f"ambient n = {ambient_n} is smaller than r = {r}")
        total += comb(a, a - r) * 2 ** e * count_covers_recursion(a - r, b - 1, ambient_n)
    return total


def count_disjoint_covers(a: int, r: int) -> int:
    """Ordered partitions of [a] into r nonempty blocks (surjections onto r labels)."""
    _check_positive(a=a, r=r)
    if r > a:
        return 0
    return sum((-1) ** j * comb(r, j) * (r - j) ** a for j in range(r + 1))


def has_private_elements(family) -> bool:
    """Every member owns an element no other member contains."""
    family = list(family)
    for i, F in enumerate(family):
        others = 0
        for j, G in enumerate(family):
            if j != i:
                others |= G
        if not F & ~others:
            return False
    return True


def enumerate_minimal_covers(E_size: int, b: int) -> list:
    """Explicit minimal covers of [E_size] by b subsets, as lists of frozensets in canonical order.

    The first b - 1 members range over multisets of nonempty subsets; the last
    must contain whatever they leave uncovered.
    """
    _check_positive(E_size=E_size, b=b)
    if E_size > ENUM_MAX_E or b > ENUM_MAX_B:
        raise ScopeError(f"enumeration covers E_size <= {ENUM_MAX_E}, b <= {ENUM_MAX_B}")
    full = (1 << E_size) - 1
    subsets = sorted(range(1, full + 1), key=canonical_key)
    rank = {s: i for i, s in enumerate(subsets)}
    out = []
    for head in combinations_with_replacement(subsets, b - 1):
        start = rank[head[-1]] if head else 0
        covered = 0
        for s in head:
            covered |= s
        need = full & ~covered
        for last in subsets[start:]:
            if last & need != need:
                continue
            fam = head + (last,)
            if has_private_elements(fam):
                out.append([_labels(s) for s in fam])
    return out


def _labels(mask: int) -> frozenset:
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


@dataclass(frozen=True)
class CoverCount:
    a: int
    b: int
    value_recursion: int | None
    value_oracle: int | None

    @property
    def agree(self) -> bool | None:
        if self.value_recursion is None or self.value_oracle is None:
            return None
        return self.value_recursion == self.value_oracle

    def to_json(self) -> dict:
        out = {"a": self.a, "b": self.b}
        if self.value_recursion is not None:
            out["recursion"] = self.value_recursion
        if self.value_oracle is not None:
            out["oracle"] = self.value_oracle
        if self.agree is not None:
            out["agree"] = self.agree
        return out


def compare_counts(a: int, b: int, mode: str = "both", ambient_n: int | None = None) -> CoverCount:
    if mode not in ("oracle", "recursion", "both"):
        raise MatroidInputError(f"unknown mode {mode!r}")
    rec = count_covers_recursion(a, b, ambient_n) if mode in ("recursion", "both") else None
    orc = count_minimal_covers_oracle(a, b) if mode in ("oracle", "both") else None
    return CoverCount(a, b, rec, orc)
