"""Point families: 2n labelled point sets, their validation and padding."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .geometry import (Anchor, OrientedLine, Point, PointRef, Region,
                       format_rational, orient, orientation_value,
                       parse_rational, region_label, scale_to_integers)

FORMAT_VERSION = 1


class PizzaError(Exception):
    """Base class for domain errors (reported with exit status 1 by the CLI)."""


class InvalidInstanceError(PizzaError):
    pass


class PreconditionError(PizzaError):
    pass


@dataclass(frozen=True)
class PointFamily:
    sets: tuple
    labels: tuple = ()

    def __post_init__(self):
        sets = tuple(tuple(p if isinstance(p, Point) else Point.of(*p) for p in s)
                     for s in self.sets)
        object.__setattr__(self, "sets", sets)
        labels = tuple(self.labels) or tuple(f"P{i + 1}" for i in range(len(sets)))
        if len(labels) != len(sets):
            raise ValueError("one label per set is required")
        object.__setattr__(self, "labels", labels)

    @property
    def n_sets(self) -> int:
        return len(self.sets)

    @property
    def n(self) -> int:
        """Number of lines a solution uses."""
        return len(self.sets) // 2

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.sets)

    @property
    def sizes(self) -> tuple:
        return tuple(len(s) for s in self.sets)

    @cached_property
    def offsets(self) -> tuple:
        out, acc = [], 0
        for s in self.sets:
            out.append(acc)
            acc += len(s)
        return tuple(out)

    @cached_property
    def points(self) -> tuple:
        return tuple(p for s in self.sets for p in s)

    @cached_property
    def set_of(self) -> tuple:
        return tuple(i for i, s in enumerate(self.sets) for _ in s)

    @cached_property
    def members(self) -> tuple:
        """Flat indices of the points of each set."""
        return tuple(tuple(range(o, o + len(s))) for o, s in zip(self.offsets, self.sets))

    @cached_property
    def coords(self) -> list:
        """Integer coordinates with the same orientation signs as ``points``."""
        return scale_to_integers(self.points)

    def flat(self, ref: PointRef) -> int:
        s, i = ref
        if not (0 <= s < len(self.sets) and 0 <= i < len(self.sets[s])):
            raise IndexError(f"no point {ref!r} in this family")
        return self.offsets[s] + i

    def ref(self, flat: int) -> PointRef:
        s = self.set_of[flat]
        return (s, flat - self.offsets[s])

    def point(self, ref: PointRef) -> Point:
        return self.sets[ref[0]][ref[1]]

    def resolve(self, anchor: Anchor) -> Point:
        if isinstance(anchor, Point):
            return anchor
        return self.point(tuple(anchor))

    def with_points(self, points: Sequence[Point]) -> "PointFamily":
        """Same set structure and labels, new coordinates (flat order)."""
        if len(points) != self.m:
            raise ValueError("point count mismatch")
        sets = tuple(tuple(points[o:o + len(s)]) for o, s in zip(self.offsets, self.sets))
        return PointFamily(sets, self.labels)

    def with_point(self, flat: int, p: Point) -> "PointFamily":
        pts = list(self.points)
        pts[flat] = p
        return self.with_points(pts)


# --- validation -----------------------------------------------------------

@dataclass(frozen=True)
class Issue:
    kind: str
    refs: tuple
    message: str


@dataclass
class ValidationReport:
    issues: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(f"{i.kind}: {i.message}" for i in self.issues)


def validate(family: PointFamily) -> ValidationReport:
    """Check every invariant of a pizza instance and report all violations."""
    report = ValidationReport()
    issues = report.issues
    k = family.n_sets
    if k < 2:
        issues.append(Issue("set_count", (), f"need at least 2 sets, got {k}"))
    if k % 2:
        issues.append(Issue("set_count", (), f"number of sets must be even, got {k}"))
    for s, pts in enumerate(family.sets):
        if not pts:
            issues.append(Issue("empty_set", ((s, -1),), f"set {family.labels[s]} is empty"))
    if len(set(family.labels)) != len(family.labels):
        issues.append(Issue("labels", (), "set labels are not unique"))

    seen: dict = {}
    for f, p in enumerate(family.points):
        if p in seen:
            a, b = family.ref(seen[p]), family.ref(f)
            issues.append(Issue("duplicate", (a, b), f"points {a} and {b} coincide at "
                                f"({format_rational(p.x)}, {format_rational(p.y)})"))
        else:
            seen[p] = f

    c = family.coords
    for i, j, l in combinations(range(family.m), 3):
        if c[i] == c[j] or c[j] == c[l] or c[i] == c[l]:
            continue
        if orientation_value(c[i], c[j], c[l]) == 0:
            refs = (family.ref(i), family.ref(j), family.ref(l))
            issues.append(Issue("collinear", refs, f"points {refs[0]}, {refs[1]}, {refs[2]} are collinear"))
    return report


def require_valid(family: PointFamily) -> None:
    report = validate(family)
    if not report.ok:
        raise InvalidInstanceError(report.summary())


def require_odd(family: PointFamily) -> None:
    even = [family.labels[i] for i, s in enumerate(family.sets) if len(s) % 2 == 0]
    if even:
        raise PreconditionError(f"sets of even size: {', '.join(even)} (pad them first)")


# --- padding --------------------------------------------------------------

@dataclass(frozen=True)
class PaddingRecord:
    added: tuple = ()  # (set index, added point)

    def __bool__(self) -> bool:
        return bool(self.added)

    def strip(self, padded: PointFamily) -> PointFamily:
        """The family before padding (added points sit at the end of their set)."""
        idx = {s for s, _ in self.added}
        sets = tuple(pts[:-1] if s in idx else pts for s, pts in enumerate(padded.sets))
        return PointFamily(sets, padded.labels)


def _generic_against(p: Point, pts: Sequence[Point]) -> bool:
    if p in pts:
        return False
    for a, b in combinations(pts, 2):
        if orient(a, b, p) == 0:
            return False
    return True


def pad_to_odd(family: PointFamily, seed: int = 0) -> tuple:
    """Give every even-size set one extra point far outside the bounding box.

    Returns ``(padded_family, record)``.  The new points are placed at more
    than twice the bounding-box diameter from its centre and are checked
    against every pair of existing points.
    """
    require_valid(family)
    if all(len(s) % 2 for s in family.sets):
        return family, PaddingRecord()
    pts = list(family.points)
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    diam = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1))
    radius = 2 * diam + 1
    rng = random.Random(seed)
    added = []
    sets = [list(s) for s in family.sets]
    for s, members in enumerate(family.sets):
        if len(members) % 2:
            continue
        for _ in range(10_000):
            # rational point on the unit circle from a random slope
            t = Fraction(rng.randint(-10_000, 10_000), rng.randint(1, 10_000))
            ux, uy = (1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)
            r = radius * (1 + Fraction(rng.randint(0, 1000), 1000))
            q = Point(cx + r * ux, cy + r * uy)
            if _generic_against(q, pts):
                break
        else:  # pragma: no cover - needs a measure-zero coincidence 10^4 times
            raise RuntimeError("could not place a generic padding point")
        pts.append(q)
        sets[s].append(q)
        added.append((s, q))
    return PointFamily(tuple(tuple(x) for x in sets), family.labels), PaddingRecord(tuple(added))


def _perturbed_line(line: OrientedLine, release: dict, resolve, others, targets_ok):
    """Push the released anchors of ``line`` slightly off it.

    ``release`` maps a released anchor to the side it must end up on (checked
    by ``targets_ok``).  The kept anchor, if any, stays put, so the line turns
    around it; with both anchors released it translates and turns.  Every
    other point must keep its side, which holds once the offset ``eps`` is
    small enough.
    """
    A, B = resolve(line.a), resolve(line.b)
    nx, ny = -(B.y - A.y), B.x - A.x
    old = {p: orient(A, B, p) for p in others}
    signs_a = (1, -1) if line.a in release else (0,)
    signs_b = (1, -1) if line.b in release else (0,)
    eps = Fraction(1)
    for _ in range(400):
        for sa in signs_a:
            for sb in signs_b:
                a2 = Point(A.x + eps * sa * nx, A.y + eps * sa * ny) if sa else line.a
                b2 = Point(B.x + eps * sb * nx, B.y + eps * sb * ny) if sb else line.b
                cand = OrientedLine(a2, b2, line.positive_left)
                pa, pb = resolve(a2), resolve(b2)
                if all(orient(pa, pb, p) == s for p, s in old.items()) and targets_ok(cand):
                    return cand
        eps /= 4
    raise RuntimeError("no small perturbation found")  # pragma: no cover


def repair_after_padding(padded: PointFamily, record: PaddingRecord, arr):
    """Turn a bisection of the padded family into one of the original family.

    If the padding point of a set was its on-line representative it is simply
    dropped (its line keeps the point as a free anchor).  Otherwise the
    surviving representative is nudged off its line into the region the
    padding point occupied, which restores that set's balance without moving
    any other point across a line.
    """
    from .arrangement import Arrangement, is_bisecting

    if not record:
        return arr
    if not is_bisecting(padded, arr):
        raise PreconditionError("arrangement does not bisect the padded family")
    original = record.strip(padded)
    added_refs = {(s, len(padded.sets[s]) - 1): q for s, q in record.added}

    def detach(anchor):
        if not isinstance(anchor, Point) and tuple(anchor) in added_refs:
            return added_refs[tuple(anchor)]
        return anchor

    lines = list(arr.lines)
    anchors_of_set: dict = {}
    for line in lines:
        for a in (line.a, line.b):
            if not isinstance(a, Point):
                anchors_of_set.setdefault(a[0], a)

    release: dict = {}  # anchor -> required region
    for s, q in record.added:
        rep = anchors_of_set.get(s)
        if rep is None or tuple(rep) in added_refs:
            continue
        release[tuple(rep)] = region_label(lines, q, padded.resolve)

    new_lines = [OrientedLine(detach(l.a), detach(l.b), l.positive_left) for l in lines]
    resolve = original.resolve
    for idx, line in enumerate(new_lines):
        mine = {a: release[a] for a in (line.a, line.b)
                if not isinstance(a, Point) and a in release}
        if not mine:
            continue
        anchors = {tuple(a) for a in (line.a, line.b) if not isinstance(a, Point)}
        others = [p for f, p in enumerate(original.points) if original.ref(f) not in anchors]

        def targets_ok(cand, idx=idx, mine=mine):
            trial = new_lines[:idx] + [cand] + new_lines[idx + 1:]
            return all(region_label(trial, original.point(a), resolve) == want
                       for a, want in mine.items())

        new_lines[idx] = _perturbed_line(line, mine, resolve, others, targets_ok)

    out = Arrangement(tuple(new_lines))
    if not is_bisecting(original, out):  # pragma: no cover - would be a bug
        raise RuntimeError("padding repair failed to bisect the original family")
    return out


# --- file format ----------------------------------------------------------

def family_to_dict(family: PointFamily) -> dict:
    return {
        "version": FORMAT_VERSION,
        "n_sets": family.n_sets,
        "labels": list(family.labels),
        "sets": [[[format_rational(p.x), format_rational(p.y)] for p in s]
                 for s in family.sets],
    }


def family_from_dict(data: dict) -> PointFamily:
    if data.get("version") != FORMAT_VERSION:
        raise InvalidInstanceError(f"unsupported instance version {data.get('version')!r}")
    sets = data["sets"]
    if data.get("n_sets", len(sets)) != len(sets):
        raise InvalidInstanceError("n_sets does not match the number of sets")
    try:
        parsed = tuple(tuple(Point(parse_rational(x), parse_rational(y)) for x, y in s)
                       for s in sets)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InvalidInstanceError(f"bad coordinate: {exc}") from exc
    return PointFamily(parsed, tuple(data.get("labels") or ()))


def dumps_family(family: PointFamily) -> str:
    return json.dumps(family_to_dict(family), indent=2) + "\n"


def loads_family(text: str) -> PointFamily:
    return family_from_dict(json.loads(text))


def make_family(sets: Iterable[Iterable], labels: Optional[Sequence[str]] = None) -> PointFamily:
    """Convenience constructor from nested ``(x, y)`` pairs."""
    return PointFamily(tuple(tuple(Point.of(x, y) for x, y in s) for s in sets),
                       tuple(labels or ()))
