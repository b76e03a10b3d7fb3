import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from pizzacut.arrangement import arrangement_from_kernel, is_bisecting, kernel_lines
from pizzacut.brute import count_bisections, enumerate_bisections
from pizzacut.generate import clustered_family, random_family
from pizzacut.geometry import orient
from pizzacut.homotopy import (Outcome, StartConfiguration, advance, event_schedule, make_start,
                               plan, solve, start_arrangements)
from pizzacut.instance import InvalidInstanceError, PreconditionError, make_family
from pizzacut.separated import alpha_pizza_cut, is_well_separated

from conftest import small_random


def order_type(fam):
    pts = fam.coords
    return {t: orient(*(pts[i] for i in t)) for t in combinations(range(fam.m), 3)}


def test_start_two_singletons():
    fam = make_family([[(0, 0)], [(2, 1)]])
    start = make_start(fam)
    assert start.Q.sizes == (1, 1)
    assert is_well_separated(start.Q)
    assert start.correspondence == (0, 1)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 4, 6]))
def test_start_properties(seed, k):
    fam = small_random(seed, k=k)
    start = make_start(fam, seed)
    Q = start.Q
    assert Q.sizes == fam.sizes
    assert is_well_separated(Q)
    r = Fraction(1, 8 * fam.m)
    xs = [p.x for p in fam.points]
    ys = [p.y for p in fam.points]
    for s in Q.sets:
        for a, b in combinations(s, 2):
            assert (a.x - b.x) ** 2 + (a.y - b.y) ** 2 < (2 * r) ** 2
        for p in s:
            assert not (min(xs) <= p.x <= max(xs) and min(ys) <= p.y <= max(ys))
    assert count_bisections(Q) == [1, 3, 15][k // 2 - 1]


def test_single_event_at_half():
    target = make_family([[(1, 1)], [(1, 0)], [(0, 1)], [(5, 9)]])
    Q = make_family([[(0, 0)], [(1, 0)], [(0, 1)], [(5, 9)]])
    events = event_schedule(StartConfiguration(Q, (0, 1, 2, 3)), target)
    assert [(e.leg, e.pair, e.time) for e in events if e.pair == (1, 2)] == [(0, (1, 2), Fraction(1, 2))]
    # the other legs do not move, so they carry no events
    assert all(e.leg == 0 for e in events)


def test_leg_without_crossings():
    target = make_family([[(1, 0)], [(10, 10)], [(12, 10)], [(10, 13)]])
    Q = make_family([[(0, 0)], [(10, 10)], [(12, 10)], [(10, 13)]])
    assert event_schedule(StartConfiguration(Q, (0, 1, 2, 3)), target) == []


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_schedule_structure(seed):
    fam = small_random(seed)
    sched = plan(fam, seed)
    m = fam.m
    assert sched.C <= m * (m - 1) * (m - 2) // 2
    keys = [(e.leg, e.time) for e in sched.events]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    assert all(0 < e.time < 1 for e in sched.events)
    prev = order_type(sched.level(0))
    for k, e in enumerate(sched.events):
        half = sched.half(k)
        c = half.coords
        assert orient(*(c[i] for i in e.triple)) == 0
        before, after = sched.around(k)
        ot_b, ot_a = order_type(before), order_type(after)
        assert ot_b == prev
        assert {t for t in ot_b if ot_b[t] != ot_a[t]} == {tuple(sorted(e.triple))}
        assert order_type(sched.level(k + 1)) == ot_a
        prev = ot_a
    assert prev == order_type(fam)


def _events_with_bisections(seeds):
    for seed in seeds:
        fam = small_random(seed)
        sched = plan(fam, seed)
        for k, e in enumerate(sched.events):
            before, after = sched.around(k)
            yield sched, k, e, before, after, enumerate_bisections(before), enumerate_bisections(after)


def test_advance_outcomes_and_reverse_symmetry():
    kinds = set()
    for sched, k, e, before, after, B, A in _events_with_bisections(range(6)):
        for arr in B:
            out = advance(before, after, e, arr)
            kinds.add(out.kind)
            if out.kind is Outcome.UNAFFECTED:
                assert out.arrangement == arr and arr in A
            elif out.kind is Outcome.RESOLVED:
                assert out.arrangement in A and is_bisecting(after, out.arrangement)
            else:
                assert out.kind is Outcome.PAIR_VANISHED
                partner = out.arrangement
                assert partner in B and partner != arr and partner not in A
                back = advance(before, after, e, partner)
                assert back.kind is Outcome.PAIR_VANISHED and back.arrangement == arr
        for arr in A:
            out = advance(after, before, e, arr, reverse=True)
            kinds.add(out.kind)
            if out.kind is Outcome.PAIR_BORN:
                partner = out.arrangement
                back = advance(after, before, e, partner, reverse=True)
                assert back.kind is Outcome.PAIR_BORN and back.arrangement == arr
            elif out.kind is Outcome.RESOLVED:
                # the forward step from the result lands back here
                fwd = advance(before, after, e, out.arrangement)
                assert fwd.kind is Outcome.RESOLVED and fwd.arrangement == arr
    assert {Outcome.UNAFFECTED, Outcome.RESOLVED, Outcome.PAIR_VANISHED, Outcome.PAIR_BORN} <= kinds


def test_case_two_event_resolves_against_brute():
    seen = 0
    for sched, k, e, before, after, B, A in _events_with_bisections(range(6)):
        so = before.set_of
        for arr in B:
            lines = kernel_lines(before, arr)
            hit = [l for l in lines if set(l) <= set(e.triple)]
            if not hit:
                continue
            (q,) = set(e.triple) - set(hit[0])
            if any(q in l for l in lines) or so[q] not in (so[hit[0][0]], so[hit[0][1]]):
                continue
            out = advance(before, after, e, arr)
            # the swapped anchor line is the only change
            swapped = kernel_lines(before, out.arrangement)
            assert sum(1 for a, b in zip(lines, swapped) if set(a) != set(b)) == 1
            target = A if out.kind is Outcome.RESOLVED else B
            assert out.arrangement in target
            seen += 1
    assert seen > 0


def test_count_change_is_even_and_explained():
    for sched, k, e, before, after, B, A in _events_with_bisections(range(6)):
        vanished = sum(advance(before, after, e, a).kind is Outcome.PAIR_VANISHED for a in B)
        born = sum(advance(after, before, e, a, reverse=True).kind is Outcome.PAIR_BORN for a in A)
        assert vanished % 2 == 0 and born % 2 == 0
        assert len(A) - len(B) == born - vanished


def test_advance_requires_bisecting_input():
    from pizzacut.arrangement import Arrangement
    from pizzacut.geometry import OrientedLine
    fam = random_family([3, 3, 1, 1], seed=4)
    sched = plan(fam)
    before, after = sched.around(0)
    bisecting = set(enumerate_bisections(before))
    candidates = (Arrangement((OrientedLine((0, i), (1, j)), OrientedLine((2, 0), (3, 0))))
                  for i in range(3) for j in range(3))
    bad = next(a for a in candidates if a not in bisecting)
    with pytest.raises(PreconditionError):
        advance(before, after, sched.events[0], bad)


def test_solve_separated_shortcut():
    fam = clustered_family([3, 5, 1, 3], seed=2)
    trace = []
    arr = solve(fam, trace=trace)
    assert trace == []
    assert arr == alpha_pizza_cut(fam, [1, 2, 0, 1])
    assert is_bisecting(fam, arr)


def test_solve_four_singletons(four_singletons):
    arr = solve(four_singletons)
    assert arr in enumerate_bisections(four_singletons)
    assert len(enumerate_bisections(four_singletons)) == 3


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_solve_matches_oracle(seed):
    rng = random.Random(seed)
    fam = random_family([rng.choice([1, 3, 5]) for _ in range(4)], seed=seed)
    arr = solve(fam, seed=seed)
    assert is_bisecting(fam, arr)
    assert arr in enumerate_bisections(fam)


def test_solve_deterministic():
    fam = random_family([3, 5, 3, 1], seed=11)
    assert solve(fam, seed=3).lines == solve(fam, seed=3).lines


def test_trace_records():
    fam = random_family([3, 3, 3, 3], seed=5)
    trace = []
    arr = solve(fam, seed=1, trace=trace)
    assert is_bisecting(fam, arr)
    assert trace
    for rec in trace:
        assert rec["outcome"] in {"resolved", "pair_vanished", "pair_born", "unaffected"}
        assert len(rec["before"]) == 2 and len(rec["after"]) == 2


def test_start_arrangements_are_the_matchings():
    fam = random_family([3, 1, 3, 5], seed=9)
    sched = plan(fam)
    seeds = start_arrangements(sched)
    Q = sched.start.Q
    assert len(seeds) == 3
    assert {arrangement_from_kernel(Q, s) for s in seeds} == set(enumerate_bisections(Q))


def test_solve_rejects_invalid():
    with pytest.raises(InvalidInstanceError):
        solve(make_family([[(0, 0)], [(1, 1)], [(2, 2)], [(5, 1)]]))
