"""Exact rational primitives: points, oriented lines and the parity classifier.

Every predicate here works on :class:`fractions.Fraction` coordinates and never
rounds.  Lines are stored by their two anchors; an anchor is either a
reference ``(set_index, point_index)`` into some :class:`PointFamily` or a
free :class:`Point` (used when a line has to pass through a synthesized
location, e.g. after padding repair).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, NamedTuple, Sequence, Tuple, Union

Rational = Fraction


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(to_rational(x), to_rational(y))


PointRef = Tuple[int, int]
Anchor = Union[PointRef, Point]


class Side(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    ON = "on"


class Region(enum.Enum):
    R_PLUS = "R_plus"
    R_MINUS = "R_minus"
    BOUNDARY = "boundary"


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3/7"`` or ``"-2"``.

    Floats are rejected: a float coordinate would silently carry binary
    rounding into every predicate.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {value!r} as an exact rational")


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    return to_rational(text)


def orientation_value(a, b, c):
    """Twice the signed area of triangle ``abc`` (exact)."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def orient(a, b, c) -> int:
    """+1 if ``a, b, c`` turn counterclockwise, -1 if clockwise, 0 if collinear."""
    d = orientation_value(a, b, c)
    return (d > 0) - (d < 0)


@dataclass(frozen=True)
class OrientedLine:
    """A line through two anchors, positive side to the left of ``a -> b``
    when ``positive_left`` is set and to the right otherwise."""

    a: Anchor
    b: Anchor
    positive_left: bool = True

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("a line needs two distinct anchors")

    def flipped(self) -> "OrientedLine":
        return OrientedLine(self.a, self.b, not self.positive_left)

    def reversed(self) -> "OrientedLine":
        """Same oriented half-planes, anchors listed the other way round."""
        return OrientedLine(self.b, self.a, not self.positive_left)


Resolver = Callable[[Anchor], Point]


def _identity(anchor: Anchor) -> Point:
    if isinstance(anchor, Point):
        return anchor
    raise TypeError(f"anchor {anchor!r} is a reference; pass a resolver")


def side_of(line: OrientedLine, p: Sequence, resolve: Resolver = _identity) -> Side:
    a, b = resolve(line.a), resolve(line.b)
    s = orient(a, b, p)
    if s == 0:
        return Side.ON
    if (s > 0) == line.positive_left:
        return Side.POSITIVE
    return Side.NEGATIVE


def region_label(lines: Iterable[OrientedLine], p: Sequence,
                 resolve: Resolver = _identity) -> Region:
    """``R_PLUS`` when ``p`` is on the positive side of an even number of lines."""
    positives = 0
    for line in lines:
        side = side_of(line, p, resolve)
        if side is Side.ON:
            return Region.BOUNDARY
        if side is Side.POSITIVE:
            positives += 1
    return Region.R_PLUS if positives % 2 == 0 else Region.R_MINUS


def scale_to_integers(points: Sequence[Sequence[Fraction]]) -> list[tuple[int, int]]:
    """Multiply all coordinates by the common denominator.

    A positive scaling leaves every orientation sign unchanged, and integer
    arithmetic is much cheaper than Fraction arithmetic in the inner loops.
    """
    den = 1
    for p in points:
        den = lcm(den, Fraction(p[0]).denominator, Fraction(p[1]).denominator)
    return [(int(Fraction(p[0]) * den), int(Fraction(p[1]) * den)) for p in points]


def convex_hull(points: Sequence[Sequence]) -> list:
    """Vertices of the convex hull in counterclockwise order (monotone chain).

    Collinear boundary points are dropped; a single point or a segment comes
    back as one or two vertices.
    """
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return pts

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    return hull


def _on_segment(a, b, p) -> bool:
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_intersect(a, b, c, d) -> bool:
    """Closed segments ``ab`` and ``cd`` share at least one point."""
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and _on_segment(a, b, c):
        return True
    if o2 == 0 and _on_segment(a, b, d):
        return True
    if o3 == 0 and _on_segment(c, d, a):
        return True
    if o4 == 0 and _on_segment(c, d, b):
        return True
    return False


def point_in_hull(hull: Sequence, p) -> bool:
    """``p`` lies in the closed convex polygon given by ccw ``hull`` vertices."""
    if len(hull) == 1:
        return tuple(hull[0]) == tuple(p)
    if len(hull) == 2:
        return orient(hull[0], hull[1], p) == 0 and _on_segment(hull[0], hull[1], p)
    return all(orient(hull[i], hull[(i + 1) % len(hull)], p) >= 0
               for i in range(len(hull)))


def _edges(hull: Sequence):
    if len(hull) < 2:
        return []
    if len(hull) == 2:
        return [(hull[0], hull[1])]
    return [(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]


def hulls_intersect(first: Sequence, second: Sequence) -> bool:
    """Whether the closed convex hulls of two finite point sets meet."""
    h1, h2 = convex_hull(first), convex_hull(second)
    for a, b in _edges(h1):
        for c, d in _edges(h2):
            if segments_intersect(a, b, c, d):
                return True
    return point_in_hull(h1, h2[0]) or point_in_hull(h2, h1[0])
