"""Exhaustive enumeration of bisecting arrangements.

The search space is one representative per set times one perfect matching
of the sets; each candidate is checked with bitmask parity arithmetic on the
integer coordinates.  This is the ground truth for everything else.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, Sequence

from .arrangement import Arrangement, arrangement_from_kernel
from .instance import PointFamily, require_odd


def all_matchings(items: Sequence) -> Iterator[tuple]:
    """Perfect matchings of ``items`` in lexicographic order.

    Each matching is a tuple of pairs; the first item is paired with every
    later one in turn, and the rest is matched recursively.
    """
    items = list(items)
    if not items:
        yield ()
        return
    if len(items) % 2:
        raise ValueError("an odd number of items has no perfect matching")
    first = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for tail in all_matchings(rest):
            yield ((first, items[i]),) + tail


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def left_masks(family: PointFamily) -> dict:
    """Bitmask of points strictly left of ``a -> b`` for every pair of points
    from different sets (``a < b``)."""
    c = family.coords
    set_of = family.set_of
    m = family.m
    masks = {}
    for a in range(m):
        ax, ay = c[a]
        for b in range(a + 1, m):
            if set_of[a] == set_of[b]:
                continue
            dx, dy = c[b][0] - ax, c[b][1] - ay
            mask = 0
            for k in range(m):
                if dx * (c[k][1] - ay) - dy * (c[k][0] - ax) > 0:
                    mask |= 1 << k
            masks[a, b] = mask
    return masks


def _scan(family: PointFamily, collect: bool):
    require_odd(family)
    members = family.members
    masks = left_masks(family)
    checks = []
    for s, mem in enumerate(members):
        bits = 0
        for f in mem:
            bits |= 1 << f
        checks.append((bits, len(mem) // 2))
    found = []
    total = 0
    for matching in all_matchings(range(family.n_sets)):
        options = []
        for i, j in matching:
            opts = []
            for a in members[i]:
                for b in members[j]:
                    opts.append((masks[a, b], (1 << a) | (1 << b), a, b))
            options.append(opts)
        for combo in product(*options):
            par = 0
            anchors = 0
            for mask, bits, _, _ in combo:
                par ^= mask
                anchors |= bits
            par &= ~anchors
            for bits, half in checks:
                if (par & bits).bit_count() != half:
                    break
            else:
                total += 1
                if collect:
                    found.append(tuple((a, b) for _, _, a, b in combo))
    return total, found


def enumerate_bisections(family: PointFamily) -> list:
    """Every bisecting arrangement (normalized, sorted, duplicate-free)."""
    _, found = _scan(family, collect=True)
    arrs = {arrangement_from_kernel(family, lines).normalized() for lines in found}
    return sorted(arrs, key=Arrangement.sort_key)


def count_bisections(family: PointFamily) -> int:
    total, _ = _scan(family, collect=False)
    return total
