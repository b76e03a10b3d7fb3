"""Random instance generators (seeded, exact)."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import Point
from .instance import PointFamily, validate


def random_family(sizes: Sequence[int], seed: int = 0, grid: int = 1000,
                  max_tries: int = 1000) -> PointFamily:
    """Integer points in ``[0, grid)^2`` in general position."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        used: set = set()
        sets = []
        for size in sizes:
            pts = []
            while len(pts) < size:
                p = Point(Fraction(rng.randrange(grid)), Fraction(rng.randrange(grid)))
                if p not in used:
                    used.add(p)
                    pts.append(p)
            sets.append(tuple(pts))
        fam = PointFamily(tuple(sets))
        if validate(fam).ok:
            return fam
    raise RuntimeError("could not draw a family in general position")


def _circle_point(theta: float) -> tuple:
    s = Fraction(math.tan(theta / 2)).limit_denominator(10_000)
    return (1 - s * s) / (1 + s * s), 2 * s / (1 + s * s)


def clustered_family(sizes: Sequence[int], seed: int = 0, radius: int = 100,
                     spread: Optional[Fraction] = None, max_tries: int = 1000) -> PointFamily:
    """One small cluster per set, the clusters evenly spaced on a circle.

    Clusters are small relative to their spacing, so every line through two
    clusters leaves the others strictly on one side.
    """
    rng = random.Random(seed)
    k = len(sizes)
    spread = Fraction(radius, 8 * k * k) if spread is None else Fraction(spread)
    grid = 10 ** 4
    for _ in range(max_tries):
        sets = []
        for i, size in enumerate(sizes):
            ux, uy = _circle_point(2 * math.pi * (i + 0.25) / k)
            cx, cy = radius * ux, radius * uy
            pts: list = []
            while len(pts) < size:
                dx = Fraction(rng.randint(-grid, grid), grid) * spread
                dy = Fraction(rng.randint(-grid, grid), grid) * spread
                p = Point(cx + dx, cy + dy)
                if dx * dx + dy * dy < spread * spread and p not in pts:
                    pts.append(p)
            sets.append(tuple(pts))
        fam = PointFamily(tuple(sets))
        if validate(fam).ok:
            return fam
    raise RuntimeError("could not draw a clustered family in general position")


def random_necklace(n: int, sizes: Sequence[int], seed: int = 0, grid: int = 1000) -> list:
    """``n`` sets of distinct rationals in ``(0, 1)``."""
    if len(sizes) != n:
        raise ValueError("need one size per set")
    rng = random.Random(seed)
    used: set = set()
    out = []
    for size in sizes:
        xs = []
        while len(xs) < size:
            x = Fraction(rng.randrange(1, grid), grid)
            if x not in used:
                used.add(x)
                xs.append(x)
        out.append(sorted(xs))
    return out
