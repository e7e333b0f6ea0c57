"""Pure-Python lattice scan kernel.

Counts (or lists) the integer points of a system of linear inequalities
that has been preprocessed into per-variable "level" form by
Fourier-Motzkin elimination (see :mod:`equimirror.geometry.scan`):
``levels[j]`` holds rows ``(c_0, ..., c_j, rhs)`` with ``c_j != 0``,
meaning ``sum c_i x_i <= rhs``, and by the projection property the rows
at level ``j`` bound ``x_j`` exactly once ``x_0 .. x_{j-1}`` are fixed.

This module is the reference implementation; ``_scan`` is a compiled twin
with identical semantics used automatically when available.
"""

from __future__ import annotations

from typing import Iterator, List, Sequence, Tuple

Row = Tuple[int, ...]


def _bounds(rows: Sequence[Row], x: List[int], j: int) -> Tuple[int, int]:
    """Integer range [lo, hi] for x_j given the prefix x[0:j]; hi < lo means empty."""
    lo = None
    hi = None
    for row in rows:
        s = row[-1]
        for i in range(j):
            s -= row[i] * x[i]
        c = row[j]
        if c > 0:
            b = s // c
            if hi is None or b < hi:
                hi = b
        else:
            b = -(s // (-c))
            if lo is None or b > lo:
                lo = b
    if lo is None or hi is None:
        raise ValueError("unbounded direction in lattice scan")
    return lo, hi


def count_levels(levels: Sequence[Sequence[Row]]) -> int:
    """Number of integer solutions of the prepared level system."""
    k = len(levels)
    if k == 0:
        return 1
    x = [0] * k

    def rec(j: int) -> int:
        lo, hi = _bounds(levels[j], x, j)
        if hi < lo:
            return 0
        if j == k - 1:
            return hi - lo + 1
        total = 0
        for val in range(lo, hi + 1):
            x[j] = val
            total += rec(j + 1)
        return total

    return rec(0)


def iter_levels(levels: Sequence[Sequence[Row]]) -> Iterator[Tuple[int, ...]]:
    """Yield every integer solution (used by tests and point listings)."""
    k = len(levels)
    if k == 0:
        yield ()
        return
    x = [0] * k

    def rec(j: int) -> Iterator[Tuple[int, ...]]:
        lo, hi = _bounds(levels[j], x, j)
        for val in range(lo, hi + 1):
            x[j] = val
            if j == k - 1:
                yield tuple(x)
            else:
                yield from rec(j + 1)

    yield from rec(0)
