"""Arrangements of oriented lines and the bisection predicates.

Two layers live here.  The public layer works with :class:`Arrangement`
values whose anchors are point references (or free points).  The kernel
layer works on flat point indices and integer coordinates; a kernel line is
an ordered pair ``(a, b)`` whose positive side is the left of ``a -> b``.  The
solvers use the kernel directly because they evaluate millions of
candidates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .geometry import (OrientedLine, Point, Region, format_rational,
                       parse_rational, scale_to_integers)
from .instance import FORMAT_VERSION, PizzaError, PointFamily


def anchor_key(anchor) -> tuple:
    if isinstance(anchor, Point):
        return (1, anchor.x, anchor.y)
    return (0, int(anchor[0]), int(anchor[1]))


@dataclass(frozen=True, eq=False)
class Arrangement:
    """n oriented lines.

    Equality and hashing ignore orientations and the order of lines and of
    anchors within a line: two arrangements are equal iff they are made of
    the same unordered anchor pairs.
    """

    lines: tuple

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))

    @property
    def key(self) -> frozenset:
        return frozenset(frozenset((anchor_key(l.a), anchor_key(l.b))) for l in self.lines)

    def __eq__(self, other):
        if not isinstance(other, Arrangement):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __len__(self):
        return len(self.lines)

    def normalized(self) -> "Arrangement":
        """Canonical representative: anchors and lines sorted, every line
        oriented with its positive side on the left."""
        lines = []
        for l in self.lines:
            a, b = sorted((l.a, l.b), key=anchor_key)
            lines.append(OrientedLine(a, b, True))
        lines.sort(key=lambda l: (anchor_key(l.a), anchor_key(l.b)))
        return Arrangement(tuple(lines))

    def flipped(self, index: Optional[int] = None) -> "Arrangement":
        """Flip one line's orientation, or all of them when ``index`` is None."""
        return Arrangement(tuple(l.flipped() if index is None or i == index else l
                                 for i, l in enumerate(self.lines)))

    def anchors(self) -> list:
        return [a for l in self.lines for a in (l.a, l.b)]

    def sort_key(self) -> tuple:
        return tuple(sorted(tuple(sorted((anchor_key(l.a), anchor_key(l.b))))
                            for l in self.lines))


class SetBalance(NamedTuple):
    count_plus: int
    count_minus: int
    count_on: int


@dataclass(frozen=True)
class BalanceReport:
    per_set: tuple

    def __getitem__(self, i) -> SetBalance:
        return self.per_set[i]

    def __len__(self):
        return len(self.per_set)

    def __iter__(self):
        return iter(self.per_set)

    def plus_counts(self) -> list:
        return [b.count_plus for b in self.per_set]


class AlmostBisecting(NamedTuple):
    almost: bool
    doubly_hit: Optional[int]
    deficient: Optional[Region]


# --- kernel ---------------------------------------------------------------

def kernel_lines(family: PointFamily, arr: Arrangement) -> list:
    """Flat ordered pairs for an arrangement anchored at instance points."""
    out = []
    for l in arr.lines:
        if isinstance(l.a, Point) or isinstance(l.b, Point):
            raise ValueError("kernel lines need reference anchors")
        a, b = family.flat(tuple(l.a)), family.flat(tuple(l.b))
        out.append((a, b) if l.positive_left else (b, a))
    return out


def arrangement_from_kernel(family: PointFamily, lines) -> Arrangement:
    return Arrangement(tuple(OrientedLine(family.ref(a), family.ref(b), True) for a, b in lines))


def point_labels(coords, lines) -> list:
    """Per point: ``None`` if on a line, else the parity of lines having it on
    their left (0 means R+, 1 means R-)."""
    segs = [(coords[a][0], coords[a][1], coords[b][0] - coords[a][0],
             coords[b][1] - coords[a][1]) for a, b in lines]
    out = []
    for cx, cy in coords:
        par = 0
        for ax, ay, dx, dy in segs:
            v = dx * (cy - ay) - dy * (cx - ax)
            if v == 0:
                par = None
                break
            if v > 0:
                par ^= 1
        out.append(par)
    return out


def set_counts(labels, set_of, n_sets) -> list:
    counts = [[0, 0, 0] for _ in range(n_sets)]
    for lab, s in zip(labels, set_of):
        counts[s][2 if lab is None else lab] += 1
    return counts


def kernel_counts(family: PointFamily, lines, coords=None) -> list:
    coords = family.coords if coords is None else coords
    return set_counts(point_labels(coords, lines), family.set_of, family.n_sets)


def counts_bisect(counts, sizes) -> bool:
    return all(c[0] == c[1] == size // 2 for c, size in zip(counts, sizes))


def kernel_bisects(family: PointFamily, lines) -> bool:
    return counts_bisect(kernel_counts(family, lines), family.sizes)


def almost_from_counts(counts, sizes):
    """``(doubly_hit, deficient_parity)`` if the counts are almost bisecting."""
    hit = None
    for s, (plus, minus, on) in enumerate(counts):
        if plus == minus == sizes[s] // 2:
            continue
        if on == 2 and abs(plus - minus) == 1 and hit is None:
            hit = s
            continue
        return None
    if hit is None:
        return None
    plus, minus, _ = counts[hit]
    return hit, (0 if plus < minus else 1)


# --- public predicates ----------------------------------------------------

def _resolved_coords(family: PointFamily, arr: Arrangement):
    """Integer coordinates for the family plus any free anchors, and kernel
    lines indexing into them."""
    extra: list = []
    index: dict = {}

    def idx(anchor):
        if isinstance(anchor, Point):
            if anchor not in index:
                index[anchor] = family.m + len(extra)
                extra.append(anchor)
            return index[anchor]
        return family.flat(tuple(anchor))

    lines = []
    for l in arr.lines:
        a, b = idx(l.a), idx(l.b)
        lines.append((a, b) if l.positive_left else (b, a))
    if not extra:
        return family.coords, lines
    return scale_to_integers(list(family.points) + extra), lines


def balance(family: PointFamily, arr: Arrangement) -> BalanceReport:
    coords, lines = _resolved_coords(family, arr)
    labels = point_labels(coords, lines)[:family.m]
    counts = set_counts(labels, family.set_of, family.n_sets)
    return BalanceReport(tuple(SetBalance(*c) for c in counts))


def is_bisecting(family: PointFamily, arr: Arrangement) -> bool:
    return all(b.count_plus == b.count_minus == size // 2
               for b, size in zip(balance(family, arr), family.sizes))


def is_almost_bisecting(family: PointFamily, arr: Arrangement) -> AlmostBisecting:
    """Detect the half-level state: one set with two points on lines and a
    one-point imbalance, all other sets exactly bisected.

    Returns the set index (0-based) and the region holding fewer points.
    """
    counts = [list(b) for b in balance(family, arr)]
    res = almost_from_counts(counts, family.sizes)
    if res is None:
        return AlmostBisecting(False, None, None)
    hit, parity = res
    return AlmostBisecting(True, hit, Region.R_PLUS if parity == 0 else Region.R_MINUS)


# --- solution files -------------------------------------------------------

def _anchor_to_json(anchor):
    if isinstance(anchor, Point):
        return {"x": format_rational(anchor.x), "y": format_rational(anchor.y)}
    return [int(anchor[0]), int(anchor[1])]


def _anchor_from_json(data):
    if isinstance(data, dict):
        return Point(parse_rational(data["x"]), parse_rational(data["y"]))
    if isinstance(data, list) and len(data) == 2:
        return (int(data[0]), int(data[1]))
    raise PizzaError(f"bad anchor {data!r}")


def arrangement_to_dict(arr: Arrangement) -> dict:
    return {
        "version": FORMAT_VERSION,
        "lines": [{"a": _anchor_to_json(l.a), "b": _anchor_to_json(l.b),
                   "positive": bool(l.positive_left)} for l in arr.lines],
    }


def arrangement_from_dict(data: dict) -> Arrangement:
    if data.get("version", FORMAT_VERSION) != FORMAT_VERSION:
        raise PizzaError(f"unsupported solution version {data.get('version')!r}")
    try:
        return Arrangement(tuple(OrientedLine(_anchor_from_json(l["a"]), _anchor_from_json(l["b"]),
                                              bool(l.get("positive", True)))
                                 for l in data["lines"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise PizzaError(f"malformed solution: {exc}") from exc


def dumps_arrangement(arr: Arrangement) -> str:
    return json.dumps(arrangement_to_dict(arr), indent=2) + "\n"


def loads_arrangement(text: str) -> Arrangement:
    return arrangement_from_dict(json.loads(text))


def check_anchors(family: PointFamily, arr: Arrangement) -> None:
    """Raise if a reference anchor does not exist in ``family``."""
    for a in arr.anchors():
        if not isinstance(a, Point):
            try:
                family.flat(tuple(a))
            except IndexError as exc:
                raise PizzaError(str(exc)) from exc
