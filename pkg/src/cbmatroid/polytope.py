"""Matroid polytopes as signed Minkowski sums of simplices, building sets, facets and normal fans.

Everything is exact: coefficients are Fractions (integers in practice) and
polytopes are compared through support functions evaluated in integer
arithmetic, never through floating-point hulls.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import lcm
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._bits import bits, canonical_key, mask_of
from .errors import ConventionMismatchError, MatroidInputError, ScopeError
from .matroid import Matroid, minor_interval
from .mcb import check_mcb, check_smcb

CONVENTIONS = ("span_as_stated", "complement_span")
DECOMPOSE_MAX_N = 10
FAN_MAX_N = 6


# --- vertices and support functions -----------------------------------------------

def polytope_vertices(M: Matroid) -> list:
    """Indicator vectors of the bases, sorted."""
    return sorted(tuple(int(b >> i & 1) for i in range(M.n)) for b in M.bases)


def support_directions(n: int) -> np.ndarray:
    """All 3**n directions in {-1, 0, 1}^n."""
    return np.array(list(product((-1, 0, 1), repeat=n)), dtype=np.int64).reshape(-1, n)


def vertex_support(vertices: Sequence[Sequence[int]], W: np.ndarray) -> np.ndarray:
    V = np.array(vertices, dtype=np.int64).reshape(len(vertices), -1)
    return (W @ V.T).max(axis=1)


def _scaled(y: Mapping[int, Fraction]) -> tuple:
    den = 1
    for v in y.values():
        den = lcm(den, Fraction(v).denominator)
    return {I: int(Fraction(v) * den) for I, v in y.items()}, den


def signed_sum_support(y_masks: Mapping[int, Fraction], W: np.ndarray) -> tuple:
    """Support function of sum y_I Delta_I on the rows of W, returned as (numerators, denominator).

    h(w) = sum_I y_I max_{i in I} w_i; negative coefficients stand for
    Minkowski differences, whose support functions subtract.
    """
    ints, den = _scaled(y_masks)
    h = np.zeros(W.shape[0], dtype=np.int64)
    for I, c in ints.items():
        if c:
            cols = list(bits(I))
            h += c * W[:, cols].max(axis=1)
    return h, den


# --- z values and Moebius inversion -------------------------------------------------

def _z_array(M: Matroid, convention: str) -> list:
    rk = M.rank_table
    full = M.full
    if convention == "span_as_stated":
        z = [M.r - int(rk[I]) for I in range(1 << M.n)]
    elif convention == "complement_span":
        z = [M.r - int(rk[full ^ I]) for I in range(1 << M.n)]
    else:
        raise MatroidInputError(f"unknown convention {convention!r}")
    z[0] = 0
    return z


def z_values(M: Matroid, convention: str = "span_as_stated") -> dict:
    """z_I for every nonempty I, keyed by frozensets of labels.

    span_as_stated: z_I = r - rank(span I).  complement_span: z_I = r - rank(E - I),
    the minimum of sum_{i in I} x_i over the matroid polytope.
    """
    z = _z_array(M, convention)
    return {M.subset(I): z[I] for I in range(1, 1 << M.n)}


def _moebius(values: list, n: int) -> list:
    f = list(values)
    for i in range(n):
        bit = 1 << i
        for S in range(1 << n):
            if S & bit:
                f[S] -= f[S ^ bit]
    return f


def _zeta(values: list, n: int) -> list:
    f = list(values)
    for i in range(n):
        bit = 1 << i
        for S in range(1 << n):
            if S & bit:
                f[S] += f[S ^ bit]
    return f


def _to_array(values: Mapping, ground: Sequence[int]) -> list:
    pos = {lab: i for i, lab in enumerate(ground)}
    arr = [Fraction(0)] * (1 << len(ground))
    for I, v in values.items():
        if I:
            arr[mask_of(pos[x] for x in I)] = Fraction(v)
    return arr


def _from_array(arr: list, ground: Sequence[int]) -> dict:
    return {frozenset(ground[i] for i in bits(I)): arr[I] for I in range(1, len(arr))}


def mobius_invert(z: Mapping[frozenset, Fraction], ground: Iterable[int]) -> dict:
    """y_I = sum over J inside I of (-1)^{|I|-|J|} z_J, with z of the empty set taken as 0."""
    ground = sorted(ground)
    return _from_array(_moebius(_to_array(z, ground), len(ground)), ground)


def cumulative(y: Mapping[frozenset, Fraction], ground: Iterable[int]) -> dict:
    """Inverse of ``mobius_invert``: z_I = sum of y_J over nonempty J inside I."""
    ground = sorted(ground)
    return _from_array(_zeta(_to_array(y, ground), len(ground)), ground)


# --- decomposition --------------------------------------------------------------------

@dataclass(frozen=True)
class MinkDecomp:
    ground: tuple
    y: dict  # frozenset of labels -> Fraction, nonzero entries only
    convention: str

    @property
    def n(self) -> int:
        return len(self.ground)

    def coefficient(self, I: Iterable[int]) -> Fraction:
        return self.y.get(frozenset(I), Fraction(0))

    def positive_support(self) -> list:
        return sorted((I for I, v in self.y.items() if v > 0), key=lambda I: (len(I), sorted(I)))

    def masks(self) -> dict:
        pos = {lab: i for i, lab in enumerate(self.ground)}
        return {mask_of(pos[x] for x in I): v for I, v in self.y.items()}

    def to_json(self) -> dict:
        entries = sorted(self.y.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
        return {"ground": list(self.ground), "convention": self.convention,
                "y": [{"subset": sorted(I), "numerator": v.numerator, "denominator": v.denominator}
                      for I, v in entries]}


def _y_masks_for(M: Matroid, convention: str) -> dict:
    y = _moebius(_z_array(M, convention), M.n)
    return {I: Fraction(y[I]) for I in range(1, 1 << M.n) if y[I]}


def support_matches(M: Matroid, y_masks: Mapping[int, Fraction]) -> bool:
    """Support functions of P_M and of sum y_I Delta_I agree on every {-1,0,1} direction."""
    W = support_directions(M.n)
    h_sum, den = signed_sum_support(y_masks, W)
    h_p = vertex_support(polytope_vertices(M), W)
    return bool(np.array_equal(h_sum, h_p * den))


def decompose(M: Matroid) -> MinkDecomp:
    """Signed Minkowski decomposition of P_M, certified by the support-function oracle.

    Tries each z-convention in turn and returns the first one the oracle accepts.
    """
    if M.n > DECOMPOSE_MAX_N:
        raise ScopeError(f"decompose is limited to n <= {DECOMPOSE_MAX_N}")
    candidates = {}
    for conv in CONVENTIONS:
        y = _y_masks_for(M, conv)
        candidates[conv] = {M.subset(I): v for I, v in y.items()}
        if support_matches(M, y):
            return MinkDecomp(M.labels, candidates[conv], conv)
    raise ConventionMismatchError("no z-convention reproduces the matroid polytope", candidates)


def is_generic(d: MinkDecomp) -> bool:
    return all(v >= 0 for v in d.y.values())


# --- building sets --------------------------------------------------------------------

def _add_member(fam, S, n):
    # ``fam`` is a bitset over subset masks.  Adds S, then every union of
    # intersecting members that this creates.  Plain-int code on purpose.
    if (fam >> S) & 1:
        return fam
    fam |= 1 << S
    stack = [S]
    total = 1 << n
    while len(stack) > 0:
        X = stack.pop()
        for Y in range(1, total):
            if (fam >> Y) & 1 and X & Y and X != Y:
                U = X | Y
                if not (fam >> U) & 1:
                    fam |= 1 << U
                    stack.append(U)
    return fam


def _singleton_bits(n):
    out = 0
    for i in range(n):
        out |= 1 << (1 << i)
    return out


def _closure_bits(members, n):
    fam = _singleton_bits(n)
    for S in sorted(members):
        fam = _add_member(fam, S, n)
    return fam


def _family_masks(family: Iterable[Iterable[int]], ground: Sequence[int]) -> list:
    pos = {lab: i for i, lab in enumerate(ground)}
    out = []
    for S in family:
        S = list(S)
        if not S:
            raise MatroidInputError("building sets contain nonempty subsets only")
        try:
            out.append(mask_of(pos[x] for x in S))
        except KeyError as e:
            raise MatroidInputError(f"element {e.args[0]} not in ground set") from None
    return out


def _unpack(fam: int, ground: Sequence[int]) -> list:
    masks = [I for I in range(1, 1 << len(ground)) if (fam >> I) & 1]
    return [frozenset(ground[i] for i in bits(I)) for I in sorted(masks, key=canonical_key)]


def building_closure(family: Iterable[Iterable[int]], ground: Iterable[int]) -> list:
    """Smallest building set on ``ground`` containing ``family``, in canonical order."""
    ground = sorted(ground)
    return _unpack(_closure_bits(_family_masks(family, ground), len(ground)), ground)


def is_building_set(family: Iterable[Iterable[int]], ground: Iterable[int]) -> bool:
    ground = sorted(ground)
    masks = set(_family_masks(family, ground))
    if any(1 << i not in masks for i in range(len(ground))):
        return False
    return all(I | J in masks for I, J in combinations(masks, 2) if I & J)


# --- facets ---------------------------------------------------------------------------

def facet_inequalities(d: MinkDecomp) -> list:
    """Inequalities sum_{i in G} x_i >= bound for G in the building closure of {I : y_I > 0}.

    The bound is sum of y_I over I in that support with I inside G; it counts
    those I when every positive coefficient is 1.
    """
    if not is_generic(d):
        raise MatroidInputError("facet description needs a decomposition with y >= 0")
    support = d.positive_support()
    out = []
    for G in building_closure(support, d.ground):
        out.append((G, sum((d.y[I] for I in support if I <= G), Fraction(0))))
    return out


def _exact_rank(rows: list) -> int:
    rows = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def affine_dimension(points: Sequence[Sequence[int]]) -> int:
    if not points:
        return -1
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    return _exact_rank(diffs) if diffs else 0


def face(vertices: Sequence[Sequence[int]], w: Sequence[int]) -> list:
    """Vertices maximizing the linear form w."""
    vals = [sum(a * b for a, b in zip(v, w)) for v in vertices]
    top = max(vals)
    return [v for v, x in zip(vertices, vals) if x == top]


def facet_subsets(vertices: Sequence[Sequence[int]], n: int) -> list:
    """Masks S with the face maximizing 1_S a facet.

    Facet normals of a generalized permutohedron are 0/1 vectors modulo
    (1,...,1), so these masks list all facets.
    """
    dim = affine_dimension(vertices)
    out = []
    for S in range(1, (1 << n) - 1):
        w = [(S >> i) & 1 for i in range(n)]
        if affine_dimension(face(vertices, w)) == dim - 1:
            out.append(S)
    return out


def flacets(M: Matroid) -> list:
    """Proper nonempty flats F with M|F and M/F both connected."""
    if not M.is_connected():
        raise MatroidInputError("flacets need a connected matroid; split into direct-sum components first")
    out = []
    for f in M.flat_masks:
        if f in (0, M.full):
            continue
        F = M.sorted_subset(f)
        if M.restriction(F).is_connected() and M.contraction(F).is_connected():
            out.append(M.subset(f))
    return out


@dataclass
class FlacetReport:
    degree: int
    connected: bool
    simple_rank1: bool
    intervals_connected: bool
    flats_connected_coconnected: bool
    convention: str | None
    generic: bool
    full_coefficient_positive: bool
    support: list = field(default_factory=list)
    closure: list = field(default_factory=list)
    mcb_holds: bool | None = None
    smcb_holds: bool | None = None
    error: str | None = None

    @property
    def hypotheses_hold(self) -> bool:
        return (self.connected and self.simple_rank1 and self.generic and self.full_coefficient_positive
                and (self.intervals_connected or self.flats_connected_coconnected))

    @property
    def agree(self) -> bool | None:
        if self.mcb_holds is None or self.smcb_holds is None:
            return None
        return self.mcb_holds == self.smcb_holds

    @property
    def asserted(self) -> bool:
        return self.hypotheses_hold and self.agree is not None

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "hypotheses": {
                "connected": self.connected,
                "simple_rank1": self.simple_rank1,
                "intervals_connected": self.intervals_connected,
                "flats_connected_coconnected": self.flats_connected_coconnected,
                "generic": self.generic,
                "full_coefficient_positive": self.full_coefficient_positive,
                "all_hold": self.hypotheses_hold,
            },
            "convention": self.convention,
            "support": [sorted(I) for I in self.support],
            "building_closure": [sorted(I) for I in self.closure],
            "mcb_holds": self.mcb_holds,
            "smcb_holds": self.smcb_holds,
            "agree": self.agree,
            "equivalence_asserted": self.asserted,
            "decomposition_error": self.error,
        }


def intervals_connected(M: Matroid) -> bool:
    """Whether M[F, G] is connected for every pair of flats F strictly inside G."""
    flats = M.flat_masks
    for f in flats:
        for g in flats:
            if f != g and not f & ~g:
                if not minor_interval(M, M.subset(f), M.subset(g)).is_connected():
                    return False
    return True


def flats_connected_coconnected(M: Matroid) -> bool:
    """Whether every proper nonempty flat F has M|F and M/F connected."""
    for f in M.flat_masks:
        if f in (0, M.full):
            continue
        F = M.sorted_subset(f)
        if not (M.restriction(F).is_connected() and M.contraction(F).is_connected()):
            return False
    return True


def mcb_flacet_equivalence(M: Matroid, a: int) -> FlacetReport:
    """Compare MCB(a) of M with sMCB(a) of the building closure of the positive support of P_M.

    Both sides are always computed; the report marks the comparison as an
    asserted equivalence only when every hypothesis holds.
    """
    report = FlacetReport(a, M.is_connected(), M.is_simple_rank1(), intervals_connected(M),
                          flats_connected_coconnected(M), None, False, False)
    report.mcb_holds = check_mcb(M, a).holds
    try:
        d = decompose(M)
    except ConventionMismatchError as e:
        report.error = str(e)
        return report
    report.convention = d.convention
    report.generic = is_generic(d)
    report.full_coefficient_positive = d.coefficient(M.labels) > 0
    report.support = d.positive_support()
    report.closure = building_closure(report.support, M.labels)
    ground = M.ground
    proper = [I for I in report.closure if I != ground]
    pos = {lab: i + 1 for i, lab in enumerate(M.labels)}
    report.smcb_holds = check_smcb(M.n, [[pos[x] for x in I] for I in proper], a).holds
    return report


# --- normal fans ------------------------------------------------------------------------

def ordered_set_partitions(n: int) -> list:
    """All ordered set partitions of range(n), as tuples giving each element's block index."""
    out = []
    for k in range(1, n + 1):
        for assign in product(range(k), repeat=n):
            if len(set(assign)) == k:
                out.append(assign)
    return out


def normal_fan_classes(vertices: Sequence[Sequence[int]], n: int) -> frozenset:
    """Partition of the braid-fan cones by the face of the polytope they select.

    For generalized permutohedra the braid fan refines the normal fan, so this
    partition determines the normal fan.
    """
    vertices = [tuple(v) for v in vertices]
    classes = {}
    for idx, assign in enumerate(ordered_set_partitions(n)):
        k = max(assign) + 1
        w = [k - b for b in assign]
        key = frozenset(face(vertices, w))
        classes.setdefault(key, []).append(idx)
    return frozenset(frozenset(v) for v in classes.values())


def normal_fan_equivalent_vertices(P: Sequence[Sequence[int]], Q: Sequence[Sequence[int]], n: int) -> bool:
    if n > FAN_MAX_N:
        raise ScopeError(f"normal fan comparison is limited to n <= {FAN_MAX_N}")
    return normal_fan_classes(P, n) == normal_fan_classes(Q, n)


def normal_fan_equivalent(M: Matroid, N: Matroid) -> bool:
    if M.n != N.n:
        raise MatroidInputError("matroids must have the same ground set size")
    return normal_fan_equivalent_vertices(polytope_vertices(M), polytope_vertices(N), M.n)
