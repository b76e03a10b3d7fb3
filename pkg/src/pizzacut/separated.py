"""Well-separated families: hull disjointness and alpha-pizza cuts."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .arrangement import Arrangement, balance
from .brute import all_matchings
from .geometry import OrientedLine, hulls_intersect, orientation_value
from .instance import PizzaError, PointFamily, PreconditionError, require_valid


class AlphaCutError(PizzaError):
    pass


@dataclass(frozen=True)
class AlphaVector:
    k: tuple

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))

    def check(self, family: PointFamily) -> None:
        if len(self.k) != family.n_sets:
            raise PreconditionError(f"need {family.n_sets} targets, got {len(self.k)}")
        for i, (k, size) in enumerate(zip(self.k, family.sizes)):
            if not 0 <= k <= size:
                raise PreconditionError(f"target {k} for set {i} outside 0..{size}")
            if k == size:
                # the cut through this set always keeps one of its points on the line
                raise PreconditionError(
                    f"target {k} for set {i} equals its size; with one point on the "
                    f"cut at most {size - 1} can be on the positive side")


def is_well_separated(family: PointFamily) -> bool:
    """True iff the convex hulls of the sets are pairwise disjoint."""
    sets = family.sets
    return not any(hulls_intersect(sets[i], sets[j])
                   for i, j in combinations(range(len(sets)), 2))


def _left_counts(P, Q, p, q):
    kp = sum(1 for x in P if orientation_value(p, q, x) > 0)
    kq = sum(1 for x in Q if orientation_value(p, q, x) > 0)
    return kp, kq


def alpha_hs_candidates(P: Sequence, Q: Sequence, kp: int, kq: int) -> list:
    """All index pairs ``(i, j)`` such that the line ``P[i] -> Q[j]`` has
    exactly ``kp`` points of P and ``kq`` of Q strictly on its left."""
    return [(i, j) for i, p in enumerate(P) for j, q in enumerate(Q)
            if _left_counts(P, Q, p, q) == (kp, kq)]


def alpha_hs_pair(P: Sequence, Q: Sequence, kp: int, kq: int) -> OrientedLine:
    """The alpha-Ham-Sandwich cut of two point sets with disjoint hulls.

    The cut passes through one point of each set, is directed from the P
    point to the Q point and counts the points strictly on its left.
    """
    if hulls_intersect(P, Q):
        raise PreconditionError("the convex hulls of the two sets intersect")
    if not (0 <= kp <= len(P) - 1 and 0 <= kq <= len(Q) - 1):
        raise PreconditionError(f"targets ({kp}, {kq}) outside 0..{len(P) - 1} x 0..{len(Q) - 1}")
    found = alpha_hs_candidates(P, Q, kp, kq)
    if not found:
        raise AlphaCutError(f"no cut with {kp}/{kq} points on the positive side")
    i, j = found[0]
    return OrientedLine(P[i], Q[j], True)


def _pair_index_cut(family: PointFamily, a: int, b: int, ka: int, kb: int):
    P, Q = family.sets[a], family.sets[b]
    found = alpha_hs_candidates(P, Q, ka, kb)
    if not found:
        raise AlphaCutError(f"no cut for sets {a}, {b} with targets {ka}, {kb}")
    i, j = found[0]
    return OrientedLine((a, i), (b, j), True)


def side_offsets(family: PointFamily, pairing) -> Optional[list]:
    """Parity of foreign cuts having each set on their positive side.

    A foreign cut for the pair ``(a, b)`` is any line through a point of
    ``P_a`` and a point of ``P_b``.  The offset of a set is well defined only
    if every such line leaves that whole set strictly on one fixed side; the
    orientation is bilinear in the two anchors, so checking all anchor pairs
    covers every transversal of the two hulls.  Returns ``None`` otherwise.
    """
    sets = family.sets
    offsets = [0] * len(sets)
    for a, b in pairing:
        for c in range(len(sets)):
            if c in (a, b):
                continue
            signs = {orientation_value(p, q, x) > 0
                     for p in sets[a] for q in sets[b] for x in sets[c]}
            if len(signs) != 1:
                return None
            if signs.pop():
                offsets[c] ^= 1
    return offsets


def _label_order(family: PointFamily) -> tuple:
    return tuple((2 * i, 2 * i + 1) for i in range(family.n))


def alpha_pizza_cut(family: PointFamily, alpha) -> Arrangement:
    """n lines with exactly ``alpha.k[i]`` points of set ``i`` in R+.

    Sets are paired in label order (0,1), (2,3), ...; if a foreign set
    straddles one of those pairs' transversals the remaining pairings are
    tried in lexicographic order.
    """
    if not isinstance(alpha, AlphaVector):
        alpha = AlphaVector(tuple(alpha))
    require_valid(family)
    alpha.check(family)
    if not is_well_separated(family):
        raise PreconditionError("family is not well-separated")
    sizes = family.sizes
    first = _label_order(family)
    pairings = [first] + [m for m in all_matchings(range(family.n_sets)) if m != first]
    for pairing in pairings:
        offsets = side_offsets(family, pairing)
        if offsets is None:
            continue
        # a point is in R+ iff it is left of its own cut exactly when the
        # foreign cuts contribute odd parity
        target = [k if off == 1 else size - 1 - k
                  for k, off, size in zip(alpha.k, offsets, sizes)]
        lines = tuple(_pair_index_cut(family, a, b, target[a], target[b]) for a, b in pairing)
        arr = Arrangement(lines)
        if balance(family, arr).plus_counts() == list(alpha.k):
            return arr
    raise AlphaCutError("no pairing gives a consistent orientation for these targets")
