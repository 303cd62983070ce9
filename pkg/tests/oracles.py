"""Slow, obviously-correct reference implementations used only by the tests.

None of these import the code paths they are compared against.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def parity_by_enumeration(class_sizes, edges) -> bool:
    """Count edges in every box X_1 x ... x X_n with |X_i| = 2."""
    edges = set(map(tuple, edges))
    pair_choices = [list(itertools.combinations(range(s), 2)) for s in class_sizes]
    for box in itertools.product(*pair_choices):
        count = sum(1 for e in itertools.product(*box) if e in edges)
        if count % 2:
            return False
    return True


def covered_by_definition(class_sizes, edges) -> set[int]:
    return {
        i
        for i, s in enumerate(class_sizes)
        if all(any(e[i] == x for e in edges) for x in range(s))
    }


def origin_in_segment(a: Fraction, b: Fraction) -> bool:
    return min(a, b) <= 0 <= max(a, b)


def _orient(p, q) -> Fraction:
    # sign of the triangle (p, q, origin)
    return p[0] * q[1] - p[1] * q[0]


def origin_in_triangle(a, b, c) -> bool:
    """Closed containment by orientation signs; handles collinear input separately."""
    s = [_orient(a, b), _orient(b, c), _orient(c, a)]
    area = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if area != 0:
        return all(v >= 0 for v in s) or all(v <= 0 for v in s)
    # collinear: the origin must lie between two of the points on a line through it
    for p, q in itertools.combinations([a, b, c], 2):
        if _orient(p, q) == 0 and p[0] * q[0] <= 0 and p[1] * q[1] <= 0:
            return True
    return False


def gf2_rank_by_columns(rows: list[int], ncols: int) -> int:
    """Textbook column-by-column elimination (different pivot order from the library)."""
    work = list(rows)
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(work)) if work[r] >> col & 1), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        for r in range(len(work)):
            if r != rank and work[r] >> col & 1:
                work[r] ^= work[rank]
        rank += 1
    return rank
