"""The parity graph behind path following, made explicit.

Vertices are a single source, level vertices ``(k, A)`` with ``A`` an
arrangement considered at the generic configuration ``P^(k)``, and half
vertices ``(k, G)`` with ``G`` considered at the degenerate configuration of
event ``k``.  In a half vertex the line through the collinear triple is keyed
by the triple itself, so the different anchor choices of that line (which
coincide geometrically) give one vertex.

Line orientations never matter here: flipping a line swaps the two parity
regions everywhere, which preserves (almost) bisection.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Optional

from .arrangement import (almost_from_counts, counts_bisect, kernel_bisects, kernel_lines,
                          point_labels, set_counts)
from .brute import all_matchings, count_bisections, double_factorial, enumerate_bisections
from .homotopy import Schedule, plan, release_rotate
from .instance import PointFamily, require_odd

SOURCE_KIND = "source"
LEVEL_KIND = "level"
HALF_KIND = "half"


@dataclass(frozen=True)
class VertexCode:
    kind: str
    k: int = -1
    lines: frozenset = frozenset()

    def __repr__(self):
        if self.kind == SOURCE_KIND:
            return "Source"
        body = sorted(tuple(sorted(l)) for l in self.lines)
        return f"{self.kind.capitalize()}({self.k}, {body})"


SOURCE = VertexCode(SOURCE_KIND)


def level_vertex(k: int, lines) -> VertexCode:
    return VertexCode(LEVEL_KIND, k, frozenset(frozenset(l) for l in lines))


def half_vertex(schedule: Schedule, e: int, lines) -> VertexCode:
    tri = frozenset(schedule.events[e].triple)
    key = frozenset(tri if set(l) <= tri else frozenset(l) for l in lines)
    return VertexCode(HALF_KIND, e, key)


@dataclass(frozen=True)
class Matching:
    pairs: tuple

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted(p)) for p in self.pairs))
        items = [x for p in pairs for x in p]
        if sorted(items) != list(range(len(items))):
            raise ValueError(f"{pairs} is not a perfect matching of 0..{len(items) - 1}")
        object.__setattr__(self, "pairs", pairs)


def pair_matching(M: Matching) -> Matching:
    """Swap partners at the first fixed pair ``(2i, 2i+1)`` that is not matched.

    An involution whose only fixed point is ``{(0,1), (2,3), ...}``.
    """
    partner = {}
    for a, b in M.pairs:
        partner[a], partner[b] = b, a
    for i in range(0, len(partner), 2):
        j = i + 1
        if partner[i] != j:
            a, b = partner[i], partner[j]
            rest = [p for p in M.pairs if i not in p and j not in p]
            return Matching(tuple(rest) + ((i, b), (j, a)))
    return M


@dataclass
class GraphContext:
    schedule: Schedule
    _labels: dict = field(default_factory=dict, repr=False)

    @property
    def C(self) -> int:
        return self.schedule.C

    def config(self, v: VertexCode) -> PointFamily:
        if v.kind == LEVEL_KIND:
            return self.schedule.level(v.k)
        return self.schedule.half(v.k)


def _pairs_valid(lines, fam: PointFamily) -> bool:
    so = fam.set_of
    seen = set()
    for a, b in lines:
        if so[a] == so[b] or so[a] in seen or so[b] in seen:
            return False
        seen.update((so[a], so[b]))
    return len(seen) == fam.n_sets


def _geometric_lines(v: VertexCode) -> list:
    # any two points of the tripled line span it at the degenerate configuration
    return [tuple(sorted(l))[:2] for l in v.lines]


def _release_triple(v: VertexCode, x: int) -> list:
    return [tuple(sorted(l - {x})) if len(l) == 3 else tuple(sorted(l)) for l in v.lines]


def _level_neighbors(v: VertexCode, ctx: GraphContext) -> list:
    fam = ctx.schedule.level(v.k)
    lines = [tuple(sorted(l)) for l in v.lines]
    if any(len(l) != 2 for l in v.lines) or not _pairs_valid(lines, fam):
        return []
    if not kernel_bisects(fam, lines):
        return []
    out = [SOURCE if v.k == 0 else half_vertex(ctx.schedule, v.k - 1, lines)]
    if v.k < ctx.C:
        out.append(half_vertex(ctx.schedule, v.k, lines))
    return out


def _bisecting_level(ctx: GraphContext, e: int, lines) -> Optional[VertexCode]:
    for k in (e, e + 1):
        fam = ctx.schedule.level(k)
        if _pairs_valid(lines, fam) and kernel_bisects(fam, lines):
            return level_vertex(k, lines)
    return None


def _half_neighbors(v: VertexCode, ctx: GraphContext) -> list:
    e = v.k
    H = ctx.schedule.half(e)
    tri = frozenset(ctx.schedule.events[e].triple)
    if any(len(l) == 3 and l != tri for l in v.lines) or any(len(l) not in (2, 3) for l in v.lines):
        return []
    lines = _geometric_lines(v)
    labels = point_labels(H.coords, lines)
    counts = set_counts(labels, H.set_of, H.n_sets)
    has_triple = tri in v.lines
    if counts_bisect(counts, H.sizes):
        if has_triple:
            others = {x for l in v.lines if l != tri for x in l}
            anchored = [x for x in tri if x in others]
            if len(anchored) != 1:
                return []
            A = _release_triple(v, anchored[0])
        else:
            A = lines
        if not _pairs_valid(A, H):
            return []
        return [level_vertex(e, A), level_vertex(e + 1, A)]
    res = almost_from_counts(counts, H.sizes)
    if res is None:
        return []
    doubly, deficient = res
    out = []
    for x in H.members[doubly]:
        if labels[x] is not None:
            continue
        if has_triple and x in tri:
            A = _release_triple(v, x)
            w = _bisecting_level(ctx, e, A)
            if w is not None:
                out.append(w)
            continue
        if not any(x in l for l in lines if len(set(l)) == 2 and frozenset(l) in v.lines):
            continue
        rotated, _ = release_rotate(H.coords, lines, x, deficient, labels)
        out.append(half_vertex(ctx.schedule, e, rotated))
    return out


def neighbors(v: VertexCode, ctx: GraphContext) -> list:
    """Neighbours of a non-source vertex (at most two)."""
    if v.kind == LEVEL_KIND:
        if not 0 <= v.k <= ctx.C:
            return []
        return _level_neighbors(v, ctx)
    if v.kind == HALF_KIND:
        if not 0 <= v.k < ctx.C:
            return []
        return _half_neighbors(v, ctx)
    raise ValueError("the source's neighbourhood is not enumerated; use is_edge")


def _source_edge(v: VertexCode, ctx: GraphContext) -> bool:
    if v.kind != LEVEL_KIND or v.k != 0 or any(len(l) != 2 for l in v.lines):
        return False
    fam = ctx.schedule.level(0)
    lines = [tuple(sorted(l)) for l in v.lines]
    return _pairs_valid(lines, fam) and kernel_bisects(fam, lines)


def is_edge(u: VertexCode, v: VertexCode, ctx: GraphContext) -> bool:
    if u == SOURCE and v == SOURCE:
        return False
    if u == SOURCE:
        return _source_edge(v, ctx)
    if v == SOURCE:
        return _source_edge(u, ctx)
    return v in neighbors(u, ctx)


@dataclass
class AuditReport:
    n_sets: int
    events: int
    vertices: int
    level_counts: dict
    half_counts: dict
    degree_histogram: dict
    source_degree: int
    solutions: int
    checks: dict
    failures: list

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "n_sets": self.n_sets,
            "events": self.events,
            "vertices": self.vertices,
            "level_vertices": {str(k): c for k, c in sorted(self.level_counts.items())},
            "half_vertices": {str(k): c for k, c in sorted(self.half_counts.items())},
            "degree_histogram": {str(d): c for d, c in sorted(self.degree_histogram.items())},
            "source_degree": self.source_degree,
            "solutions": self.solutions,
            "checks": dict(self.checks),
            "failures": list(self.failures),
        }


def audit_matchings(n_sets: int) -> tuple:
    """``(is_involution, fixed_points)`` of :func:`pair_matching` over all
    perfect matchings of ``n_sets`` elements."""
    fixed = 0
    involution = True
    for pairs in all_matchings(range(n_sets)):
        M = Matching(pairs)
        image = pair_matching(M)
        if image == M:
            fixed += 1
        elif pair_matching(image) != M:
            involution = False
    return involution, fixed


def audit(family: PointFamily, schedule: Optional[Schedule] = None, seed: int = 0) -> AuditReport:
    """Materialize the reachable graph and check its degree structure."""
    require_odd(family)
    schedule = plan(family, seed) if schedule is None else schedule
    ctx = GraphContext(schedule)
    C = schedule.C
    failures: list = []

    seeds = []
    for k in range(C + 1):
        fam = schedule.level(k)
        for arr in enumerate_bisections(fam):
            seeds.append(level_vertex(k, kernel_lines(fam, arr)))
    adj = {SOURCE: [v for v in seeds if v.k == 0]}
    queue = deque(seeds)
    while queue:
        v = queue.popleft()
        if v in adj:
            continue
        adj[v] = neighbors(v, ctx)
        for w in adj[v]:
            if w not in adj:
                queue.append(w)

    degree = {v: len(ns) for v, ns in adj.items()}
    for v, ns in adj.items():
        if len(set(ns)) != len(ns):
            failures.append(f"repeated neighbour at {v!r}")
    symmetric = True
    for u, ns in adj.items():
        for v in ns:
            if u not in adj.get(v, ()):
                symmetric = False
                failures.append(f"edge {u!r} -> {v!r} is not reciprocated")
    agree = True
    for u, ns in adj.items():
        for v in ns:
            if not is_edge(u, v, ctx) or not is_edge(v, u, ctx):
                agree = False
                failures.append(f"is_edge disagrees on {u!r} -- {v!r}")

    solutions = count_bisections(family)
    expected_source = double_factorial(family.n_sets - 1)
    final = {v for v in seeds if v.k == C}
    odd = {v for v, d in degree.items() if d % 2 and v != SOURCE}
    bounded = all(d in (0, 1, 2) for v, d in degree.items() if v != SOURCE)
    for v, d in degree.items():
        if v != SOURCE and d > 2:
            failures.append(f"degree {d} at {v!r}")
    if odd != final:
        failures.append(f"odd vertices {sorted(map(repr, odd ^ final))} differ from the solutions")
    involution, fixed = audit_matchings(family.n_sets)

    checks = {
        "source_degree": degree[SOURCE] == expected_source,
        "degrees_bounded": bounded,
        "edges_symmetric": symmetric,
        "is_edge_agrees": agree,
        "odd_vertices_are_solutions": odd == final and len(final) == solutions,
        "solutions_odd": solutions % 2 == 1,
        "handshake": sum(1 for d in degree.values() if d % 2) % 2 == 0,
        "pairing_involution": involution,
        "pairing_single_fixed_point": fixed == 1,
    }
    if not checks["source_degree"]:
        failures.append(f"source degree {degree[SOURCE]} != {expected_source}")
    levels = Counter(v.k for v in adj if v.kind == LEVEL_KIND)
    halves = Counter(v.k for v in adj if v.kind == HALF_KIND)
    return AuditReport(
        n_sets=family.n_sets, events=C, vertices=len(adj),
        level_counts=dict(levels), half_counts=dict(halves),
        degree_histogram=dict(Counter(d for v, d in degree.items() if v != SOURCE)),
        source_degree=degree[SOURCE], solutions=solutions,
        checks=checks, failures=failures)
