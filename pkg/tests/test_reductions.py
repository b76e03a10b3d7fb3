import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pizzacut.brute import enumerate_bisections
from pizzacut.generate import random_necklace
from pizzacut.homotopy import solve
from pizzacut.instance import InvalidInstanceError, PizzaError, PreconditionError, validate
from pizzacut.reductions import (NecklaceInstance, NecklaceSolution, arc_crossings,
                                 copy_solutions, dumps_necklace, dumps_necklace_solution,
                                 is_necklace_bisection, loads_necklace, moment_point,
                                 necklace_balance, necklace_to_pizza, pizza_to_necklace)

F = Fraction


def test_moment_points():
    assert moment_point(0) == (0, 0)
    assert moment_point(1) == (1, 1)
    assert moment_point(F(1, 2)) == (F(1, 2), F(1, 4))
    assert moment_point(0, copy=1) == (2, 4)
    assert moment_point(F(1, 2), copy=1) == (F(5, 2), F(25, 4))


def test_embedding_shape():
    inst = NecklaceInstance(((F(1, 4), F(3, 4)),))
    fam = necklace_to_pizza(inst)
    assert fam.n_sets == 2 and fam.sizes == (2, 2)
    assert validate(fam).ok
    assert fam.labels == ("A1", "B1")


def test_instance_validation():
    with pytest.raises(InvalidInstanceError):
        NecklaceInstance(((F(0),),))
    with pytest.raises(InvalidInstanceError):
        NecklaceInstance(((F(1, 2),), (F(1, 2),)))
    with pytest.raises(InvalidInstanceError):
        NecklaceInstance(((),))


def test_even_pair_lift():
    inst = NecklaceInstance(((F(1, 4), F(3, 4)),))
    fam = necklace_to_pizza(inst)
    arr = solve(fam)
    sol = pizza_to_necklace(inst, arr)
    assert is_necklace_bisection(inst, sol)
    assert sol.cuts == (F(1, 2),)


def test_zero_cuts():
    sol = NecklaceSolution((), "+")
    inst = NecklaceInstance(((F(1, 3),),))
    assert sol.labels == ("+",)
    assert necklace_balance(inst, sol) == [(1, 0, 0)]


def test_solution_labels_alternate():
    sol = NecklaceSolution((F(1, 3), F(1, 2)), "-")
    assert sol.labels == ("-", "+", "-")
    assert sol.label_of(F(1, 3)) is None
    assert sol.label_of(F(2, 5)) == "+"
    with pytest.raises(PizzaError):
        NecklaceSolution((F(1, 2), F(1, 3)))


def test_lift_rejects_non_bisecting():
    inst = NecklaceInstance(((F(1, 4), F(1, 2), F(3, 4)),))
    from pizzacut.arrangement import Arrangement
    from pizzacut.geometry import OrientedLine
    fam = necklace_to_pizza(inst)
    good = set(enumerate_bisections(fam))
    arr = next(a for a in (Arrangement((OrientedLine((0, i), (1, j)),))
                           for i in range(3) for j in range(3)) if a not in good)
    with pytest.raises(PreconditionError):
        pizza_to_necklace(inst, arr)


def _instances(count, seed0=0):
    for seed in range(seed0, seed0 + count):
        rng = random.Random(seed)
        n = rng.randint(1, 3)
        sizes = [rng.choice([1, 3, 5]) for _ in range(n)]
        yield NecklaceInstance(random_necklace(n, sizes, seed=seed))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_round_trip_all_solutions(seed):
    inst = next(_instances(1, seed))
    fam = necklace_to_pizza(inst)
    assert fam.sizes == tuple(len(s) for s in inst.sets) * 2
    for arr in enumerate_bisections(fam):
        sol = pizza_to_necklace(inst, arr)
        assert len(sol.cuts) <= inst.n
        for (p, m, _), s in zip(necklace_balance(inst, sol), inst.sets):
            assert p == m == len(s) // 2
        for copy, cand in enumerate(copy_solutions(inst, arr)):
            assert len(cand.cuts) <= arc_crossings(inst, arr, copy)
        total = arc_crossings(inst, arr, 0) + arc_crossings(inst, arr, 1)
        assert total <= 2 * inst.n


def test_arc_crossings_exact():
    from pizzacut.arrangement import Arrangement
    from pizzacut.geometry import OrientedLine, Point
    inst = NecklaceInstance(((F(1, 4),),))
    # y = 1/2 meets the first arc once (x = 1/sqrt 2) and misses the second
    arr = Arrangement((OrientedLine(Point.of(-5, F(1, 2)), Point.of(5, F(1, 2))),))
    assert arc_crossings(inst, arr, 0) == 1
    assert arc_crossings(inst, arr, 1) == 0
    # y = x meets the parabola at 0 and 1, both on the closed first arc
    arr = Arrangement((OrientedLine(Point.of(-1, -1), Point.of(7, 7)),))
    assert arc_crossings(inst, arr, 0) == 2
    # tangent at x = 1/2
    arr = Arrangement((OrientedLine(Point.of(0, F(-1, 4)), Point.of(1, F(3, 4))),))
    assert arc_crossings(inst, arr, 0) == 1


def test_file_round_trip():
    inst = NecklaceInstance(((F(1, 4), F(3, 4)), (F(1, 2),)))
    text = dumps_necklace(inst)
    assert json.loads(text)["sets"] == [["1/4", "3/4"], ["1/2"]]
    assert loads_necklace(text) == inst
    sol = NecklaceSolution((F(1, 3),), "+")
    data = json.loads(dumps_necklace_solution(sol))
    assert data == {"version": 1, "cuts": ["1/3"], "start_label": "+", "labels": ["+", "-"]}
