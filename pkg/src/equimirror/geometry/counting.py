"""Fixed-point lattice counts on cone slices.

Everything the equivariant tables need reduces to counting integer points
of one kind of system.  The cone over a polytope sits in ``Z^(d+1)`` with
the last coordinate as the height; a face is selected by turning the
facet inequalities containing it into equalities; fixing by a group
element adds the equalities ``(g - I) y = 0``; and a height ``m`` slice
adds ``height(y) = m``.  The equalities are eliminated by substituting a
saturated integer basis of their kernel, leaving a finite inequality
system in the kernel coordinates that the scan backend counts exactly.

Counts are memoised process-wide; the same query is asked over and over
while the recursions assemble their tables.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, Sequence, Tuple

from .intlinalg import IntMatrix, integer_kernel, vec_dot
from .scan import count_system, iter_system

Row = Tuple[int, ...]

_cache: Dict[tuple, int] = {}


def cache_size() -> int:
    return len(_cache)


def clear_cache() -> None:
    _cache.clear()


def homogenize(facets: Iterable[Tuple[Sequence[int], int]]) -> Tuple[Row, ...]:
    """Facet inequalities ``a . x <= b`` of the polytope become rows
    ``(a, -b)`` that cut out the cone at every height at once."""
    return tuple(tuple(a) + (-b,) for a, b in facets)


def _kernel_rows(
    cone_rows: Tuple[Row, ...],
    tight: Tuple[int, ...],
    matrix: IntMatrix,
    m: int,
    interior: bool,
):
    """Substitute the equality kernel; return (kernel, inequality rows)."""
    n = matrix.nrows
    eq_rows = [cone_rows[i] for i in tight]
    delta = matrix - IntMatrix.identity(n)
    eq_rows.extend(r for r in delta.rows if any(r))
    if eq_rows:
        kernel = integer_kernel(IntMatrix(eq_rows))
    else:
        kernel = IntMatrix.identity(n)
    k = kernel.ncols
    cols = kernel.columns()
    rows = []
    rhs = -1 if interior else 0
    tight_set = set(tight)
    for i, row in enumerate(cone_rows):
        if i in tight_set:
            continue
        rows.append((tuple(vec_dot(row, c) for c in cols), rhs))
    height = kernel.rows[n - 1] if k else ()
    rows.append((tuple(height), m))
    rows.append((tuple(-h for h in height), -m))
    return kernel, rows


def fixed_slice_count(
    cone_rows: Tuple[Row, ...],
    tight: Tuple[int, ...],
    matrix: IntMatrix,
    m: int,
    interior: bool = False,
) -> int:
    """Number of integer points of the height-``m`` slice of the face
    picked out by ``tight``, fixed by ``matrix``.

    With ``interior`` the remaining facet inequalities are strict, which
    counts the relative interior of the face instead.
    """
    if m < 0:
        return 0
    key = (cone_rows, tight, matrix.rows, m, interior)
    hit = _cache.get(key)
    if hit is not None:
        return hit
    kernel, rows = _kernel_rows(cone_rows, tight, matrix, m, interior)
    value = count_system(rows, kernel.ncols)
    _cache[key] = value
    return value


def fixed_slice_points(
    cone_rows: Tuple[Row, ...],
    tight: Tuple[int, ...],
    matrix: IntMatrix,
    m: int,
    interior: bool = False,
) -> Tuple[Tuple[int, ...], ...]:
    """The points themselves (sorted), for tests and small searches."""
    if m < 0:
        return ()
    kernel, rows = _kernel_rows(cone_rows, tight, matrix, m, interior)
    n = matrix.nrows
    if kernel.ncols == 0:
        return tuple((0,) * n for _ in iter_system(rows, 0))
    pts = [tuple(kernel.apply(c)) for c in iter_system(rows, kernel.ncols)]
    return tuple(sorted(pts))
