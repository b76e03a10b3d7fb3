"""Path-following solver.

A well-separated start family is moved onto the target one point at a time
along straight segments.  Within such a leg only triples containing the
moving point change orientation, each at a single rational time, so the
whole motion is described by an exact, sorted list of events.  Bisecting
arrangements are carried across the events; when an event breaks one,
:func:`advance` either repairs it (possibly through a cascade of line
rotations at the degenerate configuration) or identifies the partner with
which it disappears.

Kernel lines here are ordered pairs of flat point indices, positive side on
the left (see :mod:`pizzacut.arrangement`).
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .arrangement import (Arrangement, almost_from_counts, arrangement_from_kernel,
                          counts_bisect, kernel_bisects, kernel_counts, kernel_lines,
                          point_labels, set_counts)
from .brute import all_matchings
from .geometry import Point, orientation_value, scale_to_integers
from .instance import (PizzaError, PointFamily, PreconditionError, pad_to_odd,
                       repair_after_padding, require_odd, require_valid)
from .separated import AlphaCutError, alpha_hs_candidates, alpha_pizza_cut, is_well_separated


class DegenerateScheduleError(PizzaError):
    """The start/target pair produced simultaneous or endpoint collinearities."""


class CascadeError(RuntimeError):
    """An internal invariant of the rotation cascade failed (a bug)."""


class Outcome(enum.Enum):
    UNAFFECTED = "unaffected"
    RESOLVED = "resolved"
    PAIR_VANISHED = "pair_vanished"
    PAIR_BORN = "pair_born"


@dataclass(frozen=True)
class StartConfiguration:
    Q: PointFamily
    # flat index i of Q moves to flat index correspondence[i] of the target
    correspondence: tuple


@dataclass(frozen=True, order=True)
class Event:
    leg: int
    time: Fraction
    moving: int
    pair: tuple

    @property
    def triple(self) -> tuple:
        return (self.moving,) + tuple(self.pair)


@dataclass(frozen=True)
class StepOutcome:
    kind: Outcome
    arrangement: Arrangement
    cascade: tuple = ()


def _rational_unit(theta: float) -> tuple:
    # point on the unit circle with rational coordinates near angle theta
    import math
    s = Fraction(math.tan(theta / 2)).limit_denominator(10_000)
    return (1 - s * s) / (1 + s * s), 2 * s / (1 + s * s)


def make_start(family: PointFamily, seed: int = 0) -> StartConfiguration:
    """Tiny clusters (radius ``1/(8m)``) spread around a circle enclosing the
    target, one per set, with random rational offsets."""
    import math
    require_valid(family)
    rng = random.Random(seed)
    pts = family.points
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    radius = 2 * max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1)) + 2
    r = Fraction(1, 8 * family.m)
    k = family.n_sets
    grid = 10 ** 6
    sets = []
    for i, members in enumerate(family.sets):
        ux, uy = _rational_unit(2 * math.pi * (i + Fraction(1, 4)) / k)
        ccx, ccy = cx + radius * ux, cy + radius * uy
        cluster: list = []
        while len(cluster) < len(members):
            dx = Fraction(rng.randint(-grid, grid), grid) * r
            dy = Fraction(rng.randint(-grid, grid), grid) * r
            p = Point(ccx + dx, ccy + dy)
            if dx * dx + dy * dy < r * r and p not in cluster:
                cluster.append(p)
        sets.append(tuple(cluster))
    Q = PointFamily(tuple(sets), family.labels)
    return StartConfiguration(Q, tuple(range(family.m)))


def event_schedule(start: StartConfiguration, family: PointFamily) -> list:
    """All orientation changes of the one-point-at-a-time motion, sorted.

    Leg ``j`` moves point ``j`` from its start to its target position.  The
    collinearity of the mover with a fixed pair is linear in the leg time,
    so every event time is rational.  Raises :class:`DegenerateScheduleError`
    if the start family is degenerate, if some leg endpoint is degenerate or
    if two events of one leg coincide.
    """
    Q = start.Q
    if Q.sizes != family.sizes:
        raise PreconditionError("start and target families have different shapes")
    m = family.m
    target = [None] * m
    for i, j in enumerate(start.correspondence):
        target[i] = family.points[j]
    both = scale_to_integers(list(Q.points) + target)
    src, dst = both[:m], both[m:]
    for a, b, c in combinations(range(m), 3):
        if orientation_value(src[a], src[b], src[c]) == 0:
            raise DegenerateScheduleError("start family is not in general position")
    events = []
    cur = list(src)
    for j in range(m):
        others = [i for i in range(m) if i != j]
        times = []
        q, p = src[j], dst[j]
        for a, b in combinations(others, 2):
            f0 = orientation_value(cur[a], cur[b], q)
            f1 = orientation_value(cur[a], cur[b], p)
            if f0 == 0 or f1 == 0:
                raise DegenerateScheduleError(f"leg {j} starts or ends collinear with {a}, {b}")
            if (f0 > 0) != (f1 > 0):
                t = Fraction(f0, f0 - f1)
                times.append(t)
                events.append(Event(j, t, j, (a, b)))
        if len(set(times)) != len(times):
            raise DegenerateScheduleError(f"simultaneous events on leg {j}")
        cur[j] = p
    events.sort()
    return events


@dataclass
class Schedule:
    start: StartConfiguration
    target: PointFamily
    events: tuple
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def C(self) -> int:
        return len(self.events)

    def leg_config(self, leg: int, t: Fraction) -> PointFamily:
        key = ("leg", leg, t)
        if key not in self._cache:
            src, dst = self.start.Q.points, self.target.points
            corr = self.start.correspondence
            pts = []
            for i in range(self.target.m):
                if i < leg:
                    pts.append(dst[corr[i]])
                elif i > leg:
                    pts.append(src[i])
                else:
                    q, p = src[i], dst[corr[i]]
                    pts.append(Point(q.x + t * (p.x - q.x), q.y + t * (p.y - q.y)))
            self._cache[key] = self.start.Q.with_points(pts)
        return self._cache[key]

    def level(self, k: int) -> PointFamily:
        """The generic configuration between events ``k - 1`` and ``k``."""
        if not 0 <= k <= self.C:
            raise IndexError(k)
        if k == 0:
            return self.start.Q
        if k == self.C:
            return self.target
        prev, nxt = self.events[k - 1], self.events[k]
        if prev.leg == nxt.leg:
            return self.leg_config(prev.leg, (prev.time + nxt.time) / 2)
        return self.leg_config(prev.leg, Fraction(1))

    def half(self, k: int) -> PointFamily:
        """The degenerate configuration at event ``k``."""
        e = self.events[k]
        return self.leg_config(e.leg, e.time)

    def around(self, k: int) -> tuple:
        """Generic configurations just before and just after event ``k``.

        Both lie on the event's leg, so they differ only in the moving point;
        they have the order types of ``level(k)`` and ``level(k + 1)``.
        """
        e = self.events[k]
        lo, hi = Fraction(0), Fraction(1)
        if k > 0 and self.events[k - 1].leg == e.leg:
            lo = self.events[k - 1].time
        if k + 1 < self.C and self.events[k + 1].leg == e.leg:
            hi = self.events[k + 1].time
        return (self.leg_config(e.leg, (lo + e.time) / 2),
                self.leg_config(e.leg, (e.time + hi) / 2))


def plan(family: PointFamily, seed: int = 0, max_tries: int = 50) -> Schedule:
    """Draw start configurations until the event schedule is generic."""
    require_odd(family)
    rng = random.Random(seed)
    last: Optional[Exception] = None
    for _ in range(max_tries):
        start = make_start(family, rng.randrange(2 ** 32))
        try:
            events = event_schedule(start, family)
        except DegenerateScheduleError as exc:
            last = exc
            continue
        return Schedule(start, family, tuple(events))
    raise DegenerateScheduleError(f"no generic schedule after {max_tries} tries: {last}")


# --- the rotation step ----------------------------------------------------

def release_rotate(coords, lines, r, deficient, labels):
    """Rotate the line through anchor ``r`` about its other anchor so that
    ``r`` falls into the region of parity ``deficient``; stop at the first
    off-line point hit.

    ``labels`` are the point labels for ``lines`` (``None`` = on a line).
    Returns the new lines and the hit point.  The new line keeps the
    orientation it inherits continuously from the rotation.
    """
    idx = next(i for i, l in enumerate(lines) if r in l)
    a, b = lines[idx]
    w = b if a == r else a
    R = coords[r]
    par_others = 0
    for i, (c, d) in enumerate(lines):
        if i != idx and orientation_value(coords[c], coords[d], R) > 0:
            par_others ^= 1
    need_left = (deficient ^ par_others) == 1
    # turning w->r counterclockwise leaves r on its right, clockwise on its left
    ccw = (not need_left) if (a, b) == (w, r) else need_left
    wx, wy = coords[w]
    dx, dy = R[0] - wx, R[1] - wy
    best = None
    for x, lab in enumerate(labels):
        if lab is None or x == r:
            continue
        vx, vy = coords[x][0] - wx, coords[x][1] - wy
        c = dx * vy - dy * vx
        if c == 0:
            raise CascadeError(f"pivot {w}, released {r} and {x} are collinear")
        if (c > 0) != ccw:
            vx, vy = -vx, -vy
        if best is None:
            best = (x, vx, vy)
            continue
        cr = best[1] * vy - best[2] * vx
        if (cr < 0) if ccw else (cr > 0):
            best = (x, vx, vy)
    if best is None:
        raise CascadeError("rotation found no point to hit")
    z = best[0]
    if (orientation_value(coords[w], coords[z], R) > 0) == need_left:
        new = (w, z)
    else:
        new = (z, w)
    out = list(lines)
    out[idx] = new
    return out, z


def _line_key(lines) -> frozenset:
    return frozenset(frozenset(l) for l in lines)


def touching_line(lines, triple) -> Optional[int]:
    for i, (a, b) in enumerate(lines):
        if a in triple and b in triple:
            return i
    return None


def affects(lines, triple) -> bool:
    """Whether the event moves an off-line point across a line of ``lines``."""
    idx = touching_line(lines, triple)
    if idx is None:
        return False
    (q,) = set(triple) - set(lines[idx])
    return all(q not in l for l in lines)


def cascade(half: PointFamily, lines, idx: int, q: int):
    """Rotation cascade at the degenerate configuration ``half``.

    ``lines[idx]`` is the line through the collinear triple, ``q`` the
    point of the triple that is not an anchor and whose set has its
    representative on another line.  Returns the final arrangement, with the
    tripled line re-anchored, and the list of intermediate states.
    """
    coords = half.coords
    so = half.set_of
    sizes = half.sizes
    k = half.n_sets
    u, v = lines[idx]
    tri = (u, v, q)
    tri_sets = {so[u], so[v], so[q]}
    lines = list(lines)
    bound = 1
    for s in sizes:
        bound *= s
    bound *= len(lines) + 1
    doubly = so[q]
    r = next(x for l in lines for x in l if so[x] == doubly)
    seen = {_line_key(lines)}
    states = []
    while True:
        labels = point_labels(coords, lines)
        res = almost_from_counts(set_counts(labels, so, k), sizes)
        if res is None or res[0] != doubly:
            raise CascadeError(f"state {lines} is not almost bisecting for set {doubly}")
        lines, z = release_rotate(coords, lines, r, res[1], labels)
        states.append(tuple(lines))
        key = _line_key(lines)
        if key in seen or len(states) > bound:
            raise CascadeError("rotation cascade revisited a state")
        seen.add(key)
        j = so[z]
        if j in tri_sets:
            doubly = j
            break
        doubly = j
        r = next(x for l in lines for x in l if so[x] == j and x != z)
    res = almost_from_counts(kernel_counts(half, lines), sizes)
    if res is None or res[0] != doubly:
        raise CascadeError("final cascade state is not almost bisecting")
    x = next(p for p in tri if so[p] == doubly)
    lines[idx] = tuple(p for p in tri if p != x)
    return lines, states


def kernel_advance(before: PointFamily, after: PointFamily, half: PointFamily,
                   triple, lines):
    """Carry kernel ``lines`` (bisecting ``before``) across one event.

    Returns ``(outcome, lines, cascade_states)``; for ``PAIR_VANISHED`` the
    lines are the partner, which bisects ``before`` as well.
    """
    idx = touching_line(lines, triple)
    if idx is None:
        return Outcome.UNAFFECTED, list(lines), ()
    u, v = lines[idx]
    (q,) = set(triple) - {u, v}
    if any(q in l for l in lines):
        return Outcome.UNAFFECTED, list(lines), ()
    so = half.set_of
    states: list = []
    B = list(lines)
    if so[q] == so[u]:
        B[idx] = (q, v)
    elif so[q] == so[v]:
        B[idx] = (u, q)
    else:
        B, states = cascade(half, lines, idx, q)
    if kernel_bisects(after, B):
        return Outcome.RESOLVED, B, tuple(states)
    if kernel_bisects(before, B):
        return Outcome.PAIR_VANISHED, B, tuple(states)
    raise CascadeError(f"neither side of event {triple} is bisected by {B}")


def degenerate_between(before: PointFamily, after: PointFamily, event: Event) -> PointFamily:
    i = event.moving
    a, b = (before.points[x] for x in event.pair)
    x0, x1 = before.points[i], after.points[i]
    f0, f1 = orientation_value(a, b, x0), orientation_value(a, b, x1)
    if f0 == 0 or f1 == 0 or (f0 > 0) == (f1 > 0):
        raise PreconditionError("the two configurations do not straddle the event")
    s = f0 / (f0 - f1)
    return before.with_point(i, Point(x0.x + s * (x1.x - x0.x), x0.y + s * (x1.y - x0.y)))


def advance(config_before: PointFamily, config_after: PointFamily, event: Event,
            arr: Arrangement, reverse: bool = False) -> StepOutcome:
    """Carry a bisecting arrangement of ``config_before`` across ``event``.

    With ``reverse=True`` the step is a backward one in schedule time, and a
    pair that disappears is reported as ``PAIR_BORN``.
    """
    lines = kernel_lines(config_before, arr)
    if not kernel_bisects(config_before, lines):
        raise PreconditionError("arrangement does not bisect the configuration before the event")
    half = degenerate_between(config_before, config_after, event)
    kind, out, states = kernel_advance(config_before, config_after, half, event.triple, lines)
    if reverse and kind is Outcome.PAIR_VANISHED:
        kind = Outcome.PAIR_BORN
    fam = config_before
    return StepOutcome(kind, arrangement_from_kernel(fam, out),
                       tuple(arrangement_from_kernel(fam, s) for s in states))


# --- solving --------------------------------------------------------------

def start_arrangements(schedule: Schedule) -> list:
    """One Ham-Sandwich arrangement per matching of the sets, lexicographic."""
    Q = schedule.start.Q
    out = []
    for matching in all_matchings(range(Q.n_sets)):
        lines = []
        for a, b in matching:
            P, R = Q.sets[a], Q.sets[b]
            (i, j), *_ = alpha_hs_candidates(P, R, len(P) // 2, len(R) // 2)
            lines.append((Q.offsets[a] + i, Q.offsets[b] + j))
        if not kernel_bisects(Q, lines):
            raise CascadeError("a start arrangement is not bisecting")
        out.append(lines)
    return out


class AllSeedsDeadError(RuntimeError):
    pass


def walk(schedule: Schedule, lines, trace: Optional[list] = None):
    """Follow one path of the parity graph from a start arrangement.

    Returns ``("solution", lines)`` on reaching the target or
    ``("start", lines)`` when the path comes back to another start
    arrangement.
    """
    C = schedule.C
    k, step = 0, 1
    lines = list(lines)
    visited = set()
    while True:
        if step > 0 and k == C:
            return "solution", lines
        if step < 0 and k == 0:
            return "start", lines
        state = (k, step, _line_key(lines))
        if state in visited:
            raise CascadeError("path following revisited a state")
        visited.add(state)
        e_idx = k if step > 0 else k - 1
        ev = schedule.events[e_idx]
        if not affects(lines, ev.triple):
            k += step
            continue
        before, after = schedule.level(k), schedule.level(k + step)
        kind, new, states = kernel_advance(before, after, schedule.half(e_idx), ev.triple, lines)
        if trace is not None:
            trace.append({
                "event": e_idx,
                "leg": ev.leg,
                "time": f"{ev.time.numerator}/{ev.time.denominator}",
                "triple": list(ev.triple),
                "direction": "forward" if step > 0 else "backward",
                "outcome": (Outcome.PAIR_BORN if kind is Outcome.PAIR_VANISHED and step < 0
                            else kind).value,
                "before": [list(l) for l in lines],
                "after": [list(l) for l in new],
                "cascade": [[list(l) for l in s] for s in states],
            })
        if kind is Outcome.RESOLVED:
            lines = new
            k += step
        else:
            lines = new
            step = -step


def follow(schedule: Schedule, trace: Optional[list] = None) -> list:
    """Kernel lines of a bisection of ``schedule.target``."""
    seeds = start_arrangements(schedule)
    index = {_line_key(s): i for i, s in enumerate(seeds)}
    dead: set = set()
    for i, seed in enumerate(seeds):
        if i in dead:
            continue
        status, lines = walk(schedule, seed, trace)
        if status == "solution":
            return lines
        dead.add(i)
        dead.add(index[_line_key(lines)])
    raise AllSeedsDeadError("every start arrangement was paired with another one")


def solve(family: PointFamily, seed: int = 0, trace: Optional[list] = None) -> Arrangement:
    """A bisecting arrangement of ``family`` found by path following."""
    require_valid(family)
    padded, record = pad_to_odd(family, seed)
    arr = None
    if is_well_separated(padded):
        try:
            arr = alpha_pizza_cut(padded, [s // 2 for s in padded.sizes])
        except AlphaCutError:
            arr = None
    if arr is None:
        schedule = plan(padded, seed)
        arr = arrangement_from_kernel(padded, follow(schedule, trace))
    return repair_after_padding(padded, record, arr)
