"""Necklace splitting through the moment curve.

Every necklace set is embedded twice on the parabola ``y = x^2``: once at
``x`` and once at ``x + 2``.  A line meets the parabola at most twice, so the
``n`` lines of a bisecting arrangement cross one of the two arcs at most
``n`` times; reading the region labels along that arc gives the cuts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arrangement import Arrangement, _resolved_coords, is_bisecting, point_labels
from .geometry import Point, format_rational, parse_rational, to_rational
from .instance import FORMAT_VERSION, InvalidInstanceError, PizzaError, PointFamily, PreconditionError

COPY_SHIFT = 2


@dataclass(frozen=True)
class NecklaceInstance:
    sets: tuple

    def __post_init__(self):
        sets = tuple(tuple(to_rational(x) for x in s) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        if not sets:
            raise InvalidInstanceError("a necklace needs at least one set")
        seen = set()
        for i, s in enumerate(sets):
            if not s:
                raise InvalidInstanceError(f"necklace set {i} is empty")
            for x in s:
                if not 0 < x < 1:
                    raise InvalidInstanceError(f"position {x} of set {i} is not inside (0, 1)")
                if x in seen:
                    raise InvalidInstanceError(f"position {x} occurs twice")
                seen.add(x)

    @property
    def n(self) -> int:
        return len(self.sets)


@dataclass(frozen=True)
class NecklaceSolution:
    cuts: tuple
    start_label: str = "+"

    def __post_init__(self):
        cuts = tuple(to_rational(c) for c in self.cuts)
        if any(a >= b for a, b in zip(cuts, cuts[1:])):
            raise PizzaError("cuts must be strictly increasing")
        if self.start_label not in "+-" or len(self.start_label) != 1:
            raise PizzaError(f"bad start label {self.start_label!r}")
        object.__setattr__(self, "cuts", cuts)

    @property
    def labels(self) -> tuple:
        """Labels of the ``len(cuts) + 1`` intervals, left to right."""
        other = "-" if self.start_label == "+" else "+"
        return tuple(self.start_label if i % 2 == 0 else other for i in range(len(self.cuts) + 1))

    def label_of(self, x: Fraction) -> Optional[str]:
        if x in self.cuts:
            return None
        return self.labels[sum(1 for c in self.cuts if c < x)]


def moment_point(x, copy: int = 0) -> Point:
    x = to_rational(x) + COPY_SHIFT * copy
    return Point(x, x * x)


def necklace_to_pizza(inst: NecklaceInstance) -> PointFamily:
    """Sets ``A_1..A_n`` on the first arc, then ``B_1..B_n`` on the second."""
    sets = [tuple(moment_point(x, 0) for x in s) for s in inst.sets]
    sets += [tuple(moment_point(x, 1) for x in s) for s in inst.sets]
    labels = [f"A{i + 1}" for i in range(inst.n)] + [f"B{i + 1}" for i in range(inst.n)]
    return PointFamily(tuple(sets), tuple(labels))


def _copy_cuts(xs_labels) -> tuple:
    """Greedy cuts realizing a label sequence sorted by position.

    On-line points get a cut at their own position; consecutive off-line
    points with different labels get one at their midpoint.
    """
    # an on-line point is a crossing, so the label flips across it
    first, flips = 0, 0
    for _, lab in xs_labels:
        if lab is not None:
            first = lab ^ (flips & 1)
            break
        flips += 1
    cur = first
    cuts = []
    prev = None
    for x, lab in xs_labels:
        if lab is None:
            cuts.append(x)
            cur ^= 1
        elif lab != cur:
            cuts.append((prev + x) / 2)
            cur ^= 1
        prev = x
    return tuple(cuts), ("+" if first == 0 else "-")


def _embedded_labels(inst: NecklaceInstance, arr: Arrangement):
    fam = necklace_to_pizza(inst)
    coords, lines = _resolved_coords(fam, arr)
    return fam, point_labels(coords, lines)[:fam.m]


def copy_solutions(inst: NecklaceInstance, arr: Arrangement) -> list:
    """The candidate necklace solution read off each of the two copies."""
    fam, labels = _embedded_labels(inst, arr)
    out = []
    for copy in (0, 1):
        seq = []
        for i, s in enumerate(inst.sets):
            base = fam.offsets[inst.n * copy + i]
            seq.extend((x, labels[base + j]) for j, x in enumerate(s))
        seq.sort()
        cuts, start = _copy_cuts(seq)
        out.append(NecklaceSolution(cuts, start))
    return out


def pizza_to_necklace(inst: NecklaceInstance, arr: Arrangement) -> NecklaceSolution:
    fam = necklace_to_pizza(inst)
    if not is_bisecting(fam, arr):
        raise PreconditionError("arrangement does not bisect the embedded instance")
    for sol in copy_solutions(inst, arr):
        if len(sol.cuts) <= inst.n:
            return sol
    raise PizzaError("both copies need more than n cuts")


def necklace_balance(inst: NecklaceInstance, sol: NecklaceSolution) -> list:
    """Per set ``(plus, minus, on_cut)``."""
    out = []
    for s in inst.sets:
        labs = [sol.label_of(x) for x in s]
        out.append((labs.count("+"), labs.count("-"), labs.count(None)))
    return out


def is_necklace_bisection(inst: NecklaceInstance, sol: NecklaceSolution) -> bool:
    return len(sol.cuts) <= inst.n and all(
        p == m == len(s) // 2 for (p, m, _), s in zip(necklace_balance(inst, sol), inst.sets))


def _roots_in(a, b, c, lo, hi) -> int:
    # real roots of b x^2 + a x - c in [lo, hi]
    def g(x):
        return b * x * x + a * x - c
    if b == 0:
        if a == 0:
            return 0
        return 1 if lo <= Fraction(c) / a <= hi else 0
    disc = a * a + 4 * b * c
    if disc < 0:
        return 0
    xv = -Fraction(a) / (2 * b)
    if disc == 0:
        return 1 if lo <= xv <= hi else 0
    sb = 1 if b > 0 else -1
    left = (lo <= xv and sb * g(lo) >= 0) and (hi >= xv or sb * g(hi) <= 0)
    right = (hi >= xv and sb * g(hi) >= 0) and (lo <= xv or sb * g(lo) <= 0)
    return int(left) + int(right)


def arc_crossings(inst: NecklaceInstance, arr: Arrangement, copy: int) -> int:
    """Crossings of the arrangement's lines with one arc, with multiplicity
    per line, counted exactly."""
    fam = necklace_to_pizza(inst)
    lo, hi = Fraction(COPY_SHIFT * copy), Fraction(COPY_SHIFT * copy + 1)
    total = 0
    for l in arr.lines:
        p, q = fam.resolve(l.a), fam.resolve(l.b)
        # a x + b y = c through p and q
        a, b = q.y - p.y, p.x - q.x
        c = a * p.x + b * p.y
        total += _roots_in(a, b, c, lo, hi)
    return total


# --- files ----------------------------------------------------------------

def necklace_to_dict(inst: NecklaceInstance) -> dict:
    return {"version": FORMAT_VERSION, "n_sets": inst.n,
            "sets": [[format_rational(x) for x in s] for s in inst.sets]}


def necklace_from_dict(data: dict) -> NecklaceInstance:
    if data.get("version", FORMAT_VERSION) != FORMAT_VERSION:
        raise InvalidInstanceError(f"unsupported necklace version {data.get('version')!r}")
    try:
        sets = tuple(tuple(parse_rational(x) for x in s) for s in data["sets"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInstanceError(f"malformed necklace: {exc}") from exc
    if "n_sets" in data and data["n_sets"] != len(sets):
        raise InvalidInstanceError("n_sets does not match the number of sets")
    return NecklaceInstance(sets)


def necklace_solution_to_dict(sol: NecklaceSolution) -> dict:
    return {"version": FORMAT_VERSION, "cuts": [format_rational(c) for c in sol.cuts],
            "start_label": sol.start_label, "labels": list(sol.labels)}


def necklace_solution_from_dict(data: dict) -> NecklaceSolution:
    try:
        return NecklaceSolution(tuple(parse_rational(c) for c in data["cuts"]),
                                data.get("start_label", "+"))
    except (KeyError, TypeError, ValueError) as exc:
        raise PizzaError(f"malformed necklace solution: {exc}") from exc


def dumps_necklace(inst: NecklaceInstance) -> str:
    return json.dumps(necklace_to_dict(inst), indent=2) + "\n"


def loads_necklace(text: str) -> NecklaceInstance:
    return necklace_from_dict(json.loads(text))


def dumps_necklace_solution(sol: NecklaceSolution) -> str:
    return json.dumps(necklace_solution_to_dict(sol), indent=2) + "\n"
